//! Recursive-descent parser for polynomials in `p` and `k`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        // '/' only by nonzero constants
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 'p' | 'k' | '(' expr ')'
//! ```

use num_traits::Zero;

use super::lexer::{Cursor, Tok};
use super::poly::{Poly, Rational};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut cur = Cursor::new(text)?;
    let out = expr(&mut cur)?;
    if *cur.peek() != Tok::End {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(out)
}

fn expr(cur: &mut Cursor) -> Result<Poly> {
    let mut acc = term(cur)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc += term(cur)?;
        } else if cur.eat(&Tok::Minus) {
            acc -= term(cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor) -> Result<Poly> {
    let mut acc = unary(cur)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = &acc * &unary(cur)?;
        } else if *cur.peek() == Tok::Slash {
            cur.bump();
            let pos = cur.pos();
            let d = unary(cur)?;
            let c = d.as_constant().ok_or(Error::NonConstantDivisor { pos })?;
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc = acc.scale(&(Rational::from_integer(1.into()) / c));
        } else {
            return Ok(acc);
        }
    }
}

fn unary(cur: &mut Cursor) -> Result<Poly> {
    if cur.eat(&Tok::Minus) {
        return Ok(-unary(cur)?);
    }
    if cur.eat(&Tok::Plus) {
        return unary(cur);
    }
    power(cur)
}

fn power(cur: &mut Cursor) -> Result<Poly> {
    let base = atom(cur)?;
    if cur.eat(&Tok::Caret) {
        let n = cur.exponent()?;
        return Ok(base.pow(n));
    }
    Ok(base)
}

fn atom(cur: &mut Cursor) -> Result<Poly> {
    let pos = cur.pos();
    match cur.bump().tok {
        Tok::Int(n) => Ok(Poly::constant(Rational::from_integer(n))),
        Tok::Letter('p') => Ok(Poly::p()),
        Tok::Letter('k') => Ok(Poly::k()),
        Tok::LParen => {
            let inner = expr(cur)?;
            cur.expect(&Tok::RParen, "')'")?;
            Ok(inner)
        }
        Tok::Letter(c) => Err(Error::Syntax {
            pos,
            msg: format!("unknown variable '{c}' (expected p or k)"),
        }),
        Tok::End => Err(Error::Syntax {
            pos,
            msg: "unexpected end of input".into(),
        }),
        other => Err(Error::Syntax {
            pos,
            msg: format!("unexpected token {other:?}"),
        }),
    }
}
