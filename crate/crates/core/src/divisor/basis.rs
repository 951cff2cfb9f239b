use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{render_rational, Poly, Rational};

/// The coarse divisor basis: modular-form class `L`, ramification `R`,
/// boundary `D` and exceptional contribution `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    L,
    R,
    D,
    E,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::L, Symbol::R, Symbol::D, Symbol::E];

    pub fn from_char(c: char) -> Option<Symbol> {
        match c.to_ascii_uppercase() {
            'L' => Some(Symbol::L),
            'R' => Some(Symbol::R),
            'D' => Some(Symbol::D),
            'E' => Some(Symbol::E),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::L => 'L',
            Symbol::R => 'R',
            Symbol::D => 'D',
            Symbol::E => 'E',
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A formal combination of coarse basis symbols. Coefficients are
/// polynomials so that weight-dependent classes like `kL - D` fit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorClass {
    coeffs: BTreeMap<Symbol, Poly>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        DivisorClass::default()
    }

    pub fn basis(s: Symbol) -> Self {
        DivisorClass::zero().with(s, Poly::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Symbol, Poly)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(DivisorClass::zero(), |acc, (s, c)| acc.with(s, c))
    }

    /// Adds `c * s` to the class.
    pub fn with(mut self, s: Symbol, c: Poly) -> Self {
        let entry = self.coeffs.entry(s).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
        self
    }

    pub fn coeff(&self, s: Symbol) -> Poly {
        self.coeffs.get(&s).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Poly) -> Self {
        DivisorClass::from_terms(self.coeffs.iter().map(|(s, v)| (*s, v * c)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Poly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.coeffs
            .iter()
            .fold(self.clone(), |acc, (s, c)| acc.with(*s, c.clone()))
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.coeffs
            .iter()
            .fold(self.clone(), |acc, (s, c)| acc.with(*s, -c))
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&Poly::from_int(-1))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.coeffs.iter().enumerate() {
            match c.as_constant() {
                Some(r) => {
                    let neg = r.is_negative();
                    let mag: Rational = r.abs();
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if !mag.is_one() {
                        write!(f, "{} ", render_rational(&mag))?;
                    }
                }
                None => {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c}) ")?;
                }
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Unordered triple of basis symbols, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([Symbol; 3]);

impl Monomial {
    pub fn new(a: Symbol, b: Symbol, c: Symbol) -> Self {
        let mut s = [a, b, c];
        s.sort();
        Monomial(s)
    }

    pub fn symbols(&self) -> [Symbol; 3] {
        self.0
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.0.contains(&s)
    }

    /// All 20 degree-3 monomials in four symbols.
    pub fn all() -> Vec<Monomial> {
        let mut out = Vec::with_capacity(20);
        for (i, &a) in Symbol::ALL.iter().enumerate() {
            for (j, &b) in Symbol::ALL.iter().enumerate().skip(i) {
                for &c in Symbol::ALL.iter().skip(j) {
                    out.push(Monomial([a, b, c]));
                }
            }
        }
        out
    }

    /// The distinct orderings of the three symbols (1, 3 or 6 of them).
    pub fn orderings(&self) -> Vec<[Symbol; 3]> {
        let [a, b, c] = self.0;
        let mut out = vec![
            [a, b, c],
            [a, c, b],
            [b, a, c],
            [b, c, a],
            [c, a, b],
            [c, b, a],
        ];
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}.{b}.{c}")
    }
}
