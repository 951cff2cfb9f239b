use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    /// Single-letter identifier (`p`, `k`, `L`, ...).
    Letter(char),
    Prod,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

/// Splits input into tokens. Identifiers are single ASCII letters, except
/// the keyword `prod`, so that `2kL` lexes as `2 k L`.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push(Token {
                    tok: Tok::Int(digits.parse().expect("ascii digits")),
                    pos,
                });
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            c if c.is_ascii_alphabetic() => {
                if text[i..].starts_with("prod")
                    && !bytes
                        .get(i + 4)
                        .is_some_and(|n| n.is_ascii_alphanumeric())
                {
                    i += 4;
                    out.push(Token { tok: Tok::Prod, pos });
                    continue;
                }
                Tok::Letter(c as char)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push(Token { tok, pos });
        i += 1;
    }
    out.push(Token {
        tok: Tok::End,
        pos: text.len(),
    });
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(text)?,
            at: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    /// Reads a nonnegative integer literal that fits in `u32`.
    pub fn exponent(&mut self) -> Result<u32> {
        let pos = self.pos();
        match self.bump().tok {
            Tok::Int(n) => u32::try_from(n).map_err(|_| Error::Syntax {
                pos,
                msg: "exponent too large".into(),
            }),
            _ => Err(Error::Syntax {
                pos,
                msg: "exponent must be a nonnegative integer literal".into(),
            }),
        }
    }
}
