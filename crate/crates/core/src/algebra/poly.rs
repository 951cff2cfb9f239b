//! Polynomials in the two variables `p` (the prime) and `k` (the weight)
//! with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `"n"` or `"n/d"`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    P,
    K,
}

/// Exponent pair `(deg_p, deg_k)`.
pub type Exponents = (u32, u32);

/// Sparse polynomial over Q in `p` and `k`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Poly::constant(rat(n, d))
    }

    pub fn monomial(c: Rational, deg_p: u32, deg_k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_p, deg_k), c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::P => Poly::monomial(Rational::one(), 1, 0),
            Var::K => Poly::monomial(Rational::one(), 0, 1),
        }
    }

    pub fn p() -> Self {
        Poly::var(Var::P)
    }

    pub fn k() -> Self {
        Poly::var(Var::K)
    }

    /// `p^n`.
    pub fn p_pow(n: u32) -> Self {
        Poly::monomial(Rational::one(), n, 0)
    }

    /// kappa = p^2 - 1.
    pub fn kappa() -> Self {
        Poly::p_pow(2) - Poly::one()
    }

    /// Builds a polynomial in `p` from integer coefficients, lowest degree first.
    pub fn from_p_coeffs(coeffs: &[i64]) -> Self {
        let mut out = Poly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            out += Poly::monomial(int(c), i as u32, 0);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, deg_p: u32, deg_k: u32) -> Rational {
        self.terms
            .get(&(deg_p, deg_k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree_p(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_k(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Coefficient of `k^j`, as a polynomial in `p`.
    pub fn coeff_k(&self, j: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.1 == j)
            .map(|(e, c)| ((e.0, 0), c.clone()))
            .collect();
        Poly { terms }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (*e, v * c))
            .collect();
        Poly { terms }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial or total substitution of rational values for `p` and/or `k`.
    pub fn eval(&self, p_val: Option<&Rational>, k_val: Option<&Rational>) -> Poly {
        let mut out = Poly::zero();
        for (&(dp, dk), c) in &self.terms {
            let mut coeff = c.clone();
            let mut ep = dp;
            let mut ek = dk;
            if let Some(pv) = p_val {
                coeff *= rational_pow(pv, dp);
                ep = 0;
            }
            if let Some(kv) = k_val {
                coeff *= rational_pow(kv, dk);
                ek = 0;
            }
            out.add_term((ep, ek), coeff);
        }
        out
    }

    /// Substitutes `p = p_val` into a polynomial that only involves `p`.
    /// Returns `None` if `k` survives.
    pub fn eval_p(&self, p_val: &Rational) -> Option<Rational> {
        self.eval(Some(p_val), None).as_constant()
    }

    pub fn eval_p_int(&self, p_val: i64) -> Option<Rational> {
        self.eval_p(&int(p_val))
    }

    pub fn eval_pk(&self, p_val: &Rational, k_val: &Rational) -> Rational {
        self.eval(Some(p_val), Some(k_val))
            .as_constant()
            .expect("total substitution is constant")
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Exact division by a divisor that does not involve `k`. Returns `None`
    /// when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() || divisor.degree_k().unwrap_or(0) > 0 {
            return None;
        }
        let d_deg = divisor.degree_p()?;
        let lead = divisor.coeff(d_deg, 0);
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        // Long division in p, one power of k at a time; the leading p-term
        // of the remainder strictly decreases for each k-slice.
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(e, _)| e.0 >= d_deg)
                .max_by_key(|(e, _)| (e.0, e.1))
                .map(|(e, c)| (*e, c.clone()));
            let Some(((dp, dk), c)) = next else { break };
            let q = Poly::monomial(c / &lead, dp - d_deg, dk);
            rem -= &q * divisor;
            quot += q;
        }
        rem.is_zero().then_some(quot)
    }

    /// Sum of the absolute values of the coefficients; a cheap size measure
    /// used by the report renderers.
    pub fn height(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

fn rational_pow(r: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::from_int(n)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self += &rhs;
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        *self -= &rhs;
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(ap, ak), ac) in &self.terms {
            for (&(bp, bk), bc) in &rhs.terms {
                out.add_term((ap + bp, ak + bk), ac * bc);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

fn render_monomial(dp: u32, dk: u32) -> String {
    let mut parts = Vec::new();
    match dp {
        0 => {}
        1 => parts.push("p".to_string()),
        n => parts.push(format!("p^{n}")),
    }
    match dk {
        0 => {}
        1 => parts.push("k".to_string()),
        n => parts.push(format!("k^{n}")),
    }
    parts.join("*")
}

/// Terms are printed by descending power of `k`, then descending power of
/// `p`, e.g. `(7/144)*p^3 - (7/144)*p`. The output parses back with
/// [`crate::algebra::parse_poly`].
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
        for (i, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = render_monomial(key.0, key.1);
            if mono.is_empty() {
                write!(f, "{}", render_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.is_integer() {
                write!(f, "{}*{mono}", mag.numer())?;
            } else {
                write!(f, "({})*{mono}", render_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// Integer value of a rational, if it is one and fits in `i128`.
pub fn as_integer(r: &Rational) -> Option<i128> {
    if r.is_integer() {
        r.numer().to_i128()
    } else {
        None
    }
}
