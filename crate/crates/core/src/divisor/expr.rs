//! Divisor-expression language for intersection queries.
//!
//! ```text
//! query  := item ('*' item)*
//! item   := 'prod' '(' class (',' class)* ')'
//!         | '(' class ')' ('^' INT)?
//!         | class
//! class  := ['+' | '-'] term (('+' | '-') term)*
//! term   := [scalar ['*']] SYMBOL                 SYMBOL in {L, R, D, E}
//! scalar := factor (['*' | '/'] factor)*          '/' only by integers
//! factor := (INT | 'p' | 'k') ('^' INT)?
//! ```
//!
//! Coefficients may be written without `*`, e.g. `3L - D - 1/2 R` or
//! `2kL - 2D`. A query is a list of classes; intersecting requires exactly
//! three of them.

use num_traits::{One, Zero};

use super::basis::{DivisorClass, Symbol};
use super::table::TrilinearForm;
use crate::algebra::lexer::{Cursor, Tok};
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

/// A parsed query: the product of its factors. `(x)^3` is stored as three
/// copies of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorProduct {
    pub factors: Vec<DivisorClass>,
}

impl DivisorProduct {
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn evaluate(&self, form: &TrilinearForm) -> Result<Poly> {
        match self.factors.as_slice() {
            [a, b, c] => Ok(form.triple_product(a, b, c)),
            _ => Err(Error::Degree(self.factors.len())),
        }
    }
}

impl std::fmt::Display for DivisorProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|c| c.to_string()).collect();
        write!(f, "prod({})", parts.join(", "))
    }
}

pub fn parse_divisor_expr(text: &str) -> Result<DivisorProduct> {
    let mut cur = Cursor::new(text)?;
    let mut factors = Vec::new();
    loop {
        item(&mut cur, &mut factors)?;
        if !cur.eat(&Tok::Star) {
            break;
        }
    }
    if *cur.peek() != Tok::End {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(DivisorProduct { factors })
}

fn item(cur: &mut Cursor, out: &mut Vec<DivisorClass>) -> Result<()> {
    match cur.peek() {
        Tok::Prod => {
            cur.bump();
            cur.expect(&Tok::LParen, "'(' after prod")?;
            loop {
                out.push(class(cur)?);
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
            cur.expect(&Tok::RParen, "')'")
        }
        Tok::LParen => {
            cur.bump();
            let c = class(cur)?;
            cur.expect(&Tok::RParen, "')'")?;
            let n = if cur.eat(&Tok::Caret) { cur.exponent()? } else { 1 };
            out.extend(std::iter::repeat_n(c, n as usize));
            Ok(())
        }
        _ => {
            out.push(class(cur)?);
            Ok(())
        }
    }
}

fn class(cur: &mut Cursor) -> Result<DivisorClass> {
    let mut acc = DivisorClass::zero();
    let mut sign = if cur.eat(&Tok::Minus) {
        -1
    } else {
        cur.eat(&Tok::Plus);
        1
    };
    loop {
        let (coeff, sym) = term(cur)?;
        acc = acc.with(sym, coeff.scale(&Rational::from_integer(sign.into())));
        if cur.eat(&Tok::Plus) {
            sign = 1;
        } else if cur.eat(&Tok::Minus) {
            sign = -1;
        } else {
            return Ok(acc);
        }
    }
}

fn symbol_of(tok: &Tok) -> Option<Symbol> {
    match tok {
        Tok::Letter(c) if c.is_ascii_uppercase() => Symbol::from_char(*c),
        _ => None,
    }
}

fn term(cur: &mut Cursor) -> Result<(Poly, Symbol)> {
    let mut coeff = Poly::one();
    let mut have_scalar = false;
    loop {
        if let Some(sym) = symbol_of(cur.peek()) {
            cur.bump();
            return Ok((coeff, sym));
        }
        match cur.peek().clone() {
            Tok::Int(_) | Tok::Letter('p') | Tok::Letter('k') => {
                coeff = &coeff * &factor(cur)?;
                have_scalar = true;
            }
            Tok::Star if have_scalar => {
                cur.bump();
            }
            Tok::Slash if have_scalar => {
                cur.bump();
                let pos = cur.pos();
                match cur.bump().tok {
                    Tok::Int(n) if !n.is_zero() => {
                        coeff = coeff.scale(&(Rational::one() / Rational::from_integer(n)));
                    }
                    Tok::Int(_) => return Err(Error::DivisionByZero),
                    _ => return Err(Error::NonConstantDivisor { pos }),
                }
            }
            _ => return Err(cur.error("expected a divisor symbol L, R, D or E")),
        }
    }
}

fn factor(cur: &mut Cursor) -> Result<Poly> {
    let base = match cur.bump().tok {
        Tok::Int(n) => Poly::constant(Rational::from_integer(n)),
        Tok::Letter('p') => Poly::p(),
        Tok::Letter('k') => Poly::k(),
        _ => unreachable!("caller checked the token"),
    };
    if cur.eat(&Tok::Caret) {
        return Ok(base.pow(cur.exponent()?));
    }
    Ok(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::divisor::canonical_class;

    #[test]
    fn canonical_cube() {
        let q = parse_divisor_expr("(3L - D - 1/2 R - 1/2 E)^3").unwrap();
        assert_eq!(q.degree(), 3);
        for f in &q.factors {
            assert_eq!(f, &canonical_class());
        }
    }

    #[test]
    fn prod_and_star_forms_agree() {
        let a = parse_divisor_expr("prod(L, L, L)").unwrap();
        let b = parse_divisor_expr("L*L*L").unwrap();
        let c = parse_divisor_expr("(L)^3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn degree_is_checked_at_evaluation() {
        let t = TrilinearForm::shipped();
        let q = parse_divisor_expr("L + R").unwrap();
        assert_eq!(q.evaluate(&t), Err(Error::Degree(1)));
        let q = parse_divisor_expr("prod(L,L)").unwrap();
        assert_eq!(q.evaluate(&t).unwrap_err().to_string(), "degree must be 3 (got 2)");
    }

    #[test]
    fn weight_dependent_coefficients() {
        let q = parse_divisor_expr("prod(kL - D, kL - D, 2*k*L - 2D)").unwrap();
        assert_eq!(q.factors[2].coeff(Symbol::L), Poly::k().scale(&rat(2, 1)));
        assert_eq!(q.factors[0].coeff(Symbol::D), Poly::from_int(-1));
        let r = parse_divisor_expr("p^2/4 R").unwrap();
        assert_eq!(r.factors[0].coeff(Symbol::R), Poly::p_pow(2).scale(&rat(1, 4)));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_divisor_expr("3X"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_divisor_expr("prod(L,"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_divisor_expr("(L+R"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_divisor_expr("1/p L"), Err(Error::NonConstantDivisor { pos: 2 })));
        assert!(matches!(parse_divisor_expr("L R"), Err(Error::Syntax { .. })));
    }
}
