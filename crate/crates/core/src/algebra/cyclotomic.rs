//! Exact sums over roots of unity.
//!
//! Elements of the cyclotomic field Q(zeta_N) are stored densely as
//! polynomials of degree < phi(N) reduced modulo the N-th cyclotomic
//! polynomial. A sum is rational exactly when every non-constant coordinate
//! vanishes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{rat, Poly, Rational};
use crate::error::{Error, Result};

/// Largest cyclotomic order handled by the dense representation.
pub const MAX_ORDER: u64 = 10_000;

/// `xi^exponent` for `xi = exp(2 pi i / order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub order: u64,
    pub exponent: i64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Self {
        assert!(order > 0, "root of unity needs a positive order");
        RootOfUnity {
            order,
            exponent: exponent.rem_euclid(order as i64),
        }
    }

    pub fn minus_one() -> Self {
        RootOfUnity::new(2, 1)
    }

    pub fn inverse(self) -> Self {
        RootOfUnity::new(self.order, -self.exponent)
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    /// Exponent of this element as a power of `zeta_n`, where `order | n`.
    fn exponent_in(self, n: u64) -> u64 {
        debug_assert_eq!(n % self.order, 0);
        (self.exponent as u64) * (n / self.order)
    }

    pub fn to_complex(self) -> (f64, f64) {
        let t = std::f64::consts::TAU * self.exponent as f64 / self.order as f64;
        (t.cos(), t.sin())
    }
}

impl std::fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "zeta_{}^{}", self.order, self.exponent)
    }
}

type UPoly = Vec<Rational>;

fn trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn upoly_sub(a: &[Rational], b: &[Rational]) -> UPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (UPoly, UPoly) {
    let mut rem: UPoly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, built up over the divisors of n.
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut known: Vec<(u64, UPoly)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut num: UPoly = vec![Rational::zero(); d as usize + 1];
        num[0] = -Rational::one();
        num[d as usize] = Rational::one();
        for (e, phi_e) in &known {
            if d % e == 0 {
                let (q, r) = upoly_divrem(&num, phi_e);
                debug_assert!(r.is_empty());
                num = q;
            }
        }
        known.push((d, num));
    }
    let (_, phi) = known.pop().expect("n has at least one divisor");
    phi.into_iter().map(|c| c.to_integer()).collect()
}

/// The field Q(zeta_n), with elements reduced modulo Phi_n.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    n: u64,
    modulus: UPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclotomicElement {
    coords: UPoly,
}

impl CyclotomicElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// The rational value, if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }
}

impl CyclotomicField {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOverflow(n));
        }
        let modulus = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        Ok(CyclotomicField { n, modulus })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, a: UPoly) -> CyclotomicElement {
        let (_, mut r) = upoly_divrem(&a, &self.modulus);
        trim(&mut r);
        CyclotomicElement { coords: r }
    }

    pub fn zero(&self) -> CyclotomicElement {
        CyclotomicElement { coords: Vec::new() }
    }

    pub fn rational(&self, c: Rational) -> CyclotomicElement {
        self.reduce(vec![c])
    }

    pub fn root(&self, r: RootOfUnity) -> CyclotomicElement {
        let e = r.exponent_in(self.n) as usize;
        let mut a = vec![Rational::zero(); e + 1];
        a[e] = Rational::one();
        self.reduce(a)
    }

    pub fn add(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        let neg_b: UPoly = b.coords.iter().map(|c| -c.clone()).collect();
        CyclotomicElement {
            coords: upoly_sub(&a.coords, &neg_b),
        }
    }

    pub fn sub(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement {
            coords: upoly_sub(&a.coords, &b.coords),
        }
    }

    pub fn mul(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        self.reduce(upoly_mul(&a.coords, &b.coords))
    }

    /// Inverse via the extended Euclidean algorithm against Phi_n.
    pub fn inv(&self, a: &CyclotomicElement) -> Option<CyclotomicElement> {
        if a.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a.coords.clone());
        let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = upoly_divrem(&r0, &r1);
            let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Phi_n is irreducible, so the gcd is a nonzero constant.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        let scaled = s0.into_iter().map(|x| x / &c).collect();
        Some(self.reduce(scaled))
    }

    /// `1 / (1 - alpha)`; fails when `alpha == 1`.
    pub fn inv_one_minus(&self, alpha: RootOfUnity) -> Result<CyclotomicElement> {
        let one = self.rational(Rational::one());
        let d = self.sub(&one, &self.root(alpha));
        self.inv(&d).ok_or_else(|| Error::Pole(alpha.to_string()))
    }
}

fn common_order<'a>(roots: impl IntoIterator<Item = &'a RootOfUnity>) -> Result<u64> {
    let mut n = 1u64;
    for r in roots {
        n = n.lcm(&r.order);
        if n > MAX_ORDER {
            return Err(Error::OrderOverflow(n));
        }
    }
    Ok(n)
}

/// `sum_i sign_i / ((1 - alpha_i^{-1}) (1 - beta_i^{-1}))`, computed exactly in
/// the cyclotomic field of the common order. The list must be Galois stable;
/// a non-rational total is reported as [`Error::NotRational`].
pub fn unit_root_pair_sum(
    elements: &[(RootOfUnity, RootOfUnity)],
    signs: &[i8],
) -> Result<Rational> {
    if elements.len() != signs.len() {
        return Err(Error::InvalidArgument(format!(
            "{} elements but {} signs",
            elements.len(),
            signs.len()
        )));
    }
    let n = common_order(elements.iter().flat_map(|(a, b)| [a, b]))?;
    let field = CyclotomicField::new(n)?;
    let mut total = field.zero();
    for ((a, b), &s) in elements.iter().zip(signs) {
        if s != 1 && s != -1 {
            return Err(Error::InvalidArgument(format!("sign {s} is not +-1")));
        }
        let term = field.mul(
            &field.inv_one_minus(a.inverse())?,
            &field.inv_one_minus(b.inverse())?,
        );
        total = if s == 1 {
            field.add(&total, &term)
        } else {
            field.sub(&total, &term)
        };
    }
    total.as_rational().ok_or(Error::NotRational)
}

/// For a list of normal rotations `e^{i theta}` returns the exact pair
/// `(sum u, sum v)` with `u = 1/(1 - e^{-i theta})` and
/// `v = e^{-i theta}/(1 - e^{-i theta})^2`.
pub fn single_angle_sums(elements: &[RootOfUnity]) -> Result<(Rational, Rational)> {
    let n = common_order(elements)?;
    let field = CyclotomicField::new(n)?;
    let mut su = field.zero();
    let mut sv = field.zero();
    for &a in elements {
        let inv = a.inverse();
        let u = field.inv_one_minus(inv)?;
        let v = field.mul(&field.mul(&u, &u), &field.root(inv));
        su = field.add(&su, &u);
        sv = field.add(&sv, &v);
    }
    match (su.as_rational(), sv.as_rational()) {
        (Some(u), Some(v)) => Ok((u, v)),
        _ => Err(Error::NotRational),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma7Kind {
    /// `sum_{j=1}^{n-1} 1/(1 - xi^j) = (n-1)/2`
    Simple,
    /// `sum_{j=1}^{n-1} xi^j/(1 - xi^j)^2 = -(n^2-1)/12`
    DoublePole,
}

/// Closed form of the sums over all nontrivial n-th roots of unity.
pub fn lemma7_sum(kind: Lemma7Kind, n: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("order n = {n} must be >= 2")));
    }
    let n = i64::try_from(n).map_err(|_| Error::OrderOverflow(n))?;
    Ok(match kind {
        Lemma7Kind::Simple => rat(n - 1, 2),
        Lemma7Kind::DoublePole => {
            let nn = Rational::from_integer(BigInt::from(n) * BigInt::from(n));
            -(nn - Rational::one()) / Rational::from_integer(12.into())
        }
    })
}

/// The same closed forms with a symbolic order, e.g. `n = p^2`.
pub fn lemma7_closed_form(kind: Lemma7Kind, n: &Poly) -> Poly {
    match kind {
        Lemma7Kind::Simple => (n - &Poly::one()).scale(&rat(1, 2)),
        Lemma7Kind::DoublePole => (&(n * n) - &Poly::one()).scale(&rat(-1, 12)),
    }
}
