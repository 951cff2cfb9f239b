//! Truncated lattice sums for theta constants with characteristics.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::SiegelPoint;
use crate::error::{Error, Result};

/// Points with `lambda_min(Im tau)` below this are rejected.
pub const MIN_EIGENVALUE: f64 = 1e-6;

/// A characteristic `m = (m1', m2'; m1'', m2'')` with entries in `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThetaCharacteristic {
    pub a: [u8; 2],
    pub b: [u8; 2],
}

impl ThetaCharacteristic {
    pub fn new(a: [u8; 2], b: [u8; 2]) -> Result<Self> {
        if a.iter().chain(b.iter()).any(|&x| x > 1) {
            return Err(Error::InvalidArgument("characteristic entries must be 0 or 1".into()));
        }
        Ok(ThetaCharacteristic { a, b })
    }

    /// Parses `"a1,a2;b1,b2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("characteristic '{s}': expected a1,a2;b1,b2"));
        let (l, r) = s.split_once(';').ok_or_else(bad)?;
        let pair = |t: &str| -> Result<[u8; 2]> {
            let v: Vec<u8> = t
                .split(',')
                .map(|x| x.trim().parse::<u8>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            v.try_into().map_err(|_| bad())
        };
        ThetaCharacteristic::new(pair(l)?, pair(r)?)
    }

    /// All 16 characteristics in lexicographic order.
    pub fn all() -> Vec<ThetaCharacteristic> {
        (0u8..16)
            .map(|n| ThetaCharacteristic {
                a: [(n >> 3) & 1, (n >> 2) & 1],
                b: [(n >> 1) & 1, n & 1],
            })
            .collect()
    }

    pub fn is_even(&self) -> bool {
        (self.a[0] * self.b[0] + self.a[1] * self.b[1]) % 2 == 0
    }

    pub fn even() -> Vec<ThetaCharacteristic> {
        Self::all().into_iter().filter(|m| m.is_even()).collect()
    }

    pub fn odd() -> Vec<ThetaCharacteristic> {
        Self::all().into_iter().filter(|m| !m.is_even()).collect()
    }
}

impl std::fmt::Display for ThetaCharacteristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{};{},{}", self.a[0], self.a[1], self.b[0], self.b[1])
    }
}

/// Bound on `sum_{x in Z + s, |x| > r} exp(-pi lambda x^2)`.
fn tail_1d(lambda: f64, r: f64) -> f64 {
    2.0 * (-PI * lambda * r * r).exp() * (1.0 + 1.0 / (2.0 * PI * lambda * r))
}

/// Bound on the full one-dimensional sum.
fn full_1d(lambda: f64) -> f64 {
    2.0 + 1.0 / lambda.sqrt()
}

/// Smallest half-integer `R >= 1` with `2 * full * tail(R) < eps`; terms
/// with `|q_i + m_i'/2| <= R` for both `i` are summed.
pub fn truncation_radius(lambda: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps = {eps} must be positive")));
    }
    if !(lambda >= MIN_EIGENVALUE) {
        return Err(Error::InvalidArgument(format!(
            "lambda_min(Im tau) = {lambda:e} is below {MIN_EIGENVALUE:e}"
        )));
    }
    let mut r = 1.0;
    while 2.0 * full_1d(lambda) * tail_1d(lambda, r) >= eps {
        r += 0.5;
    }
    Ok(r)
}

/// `Theta_m(tau) = sum_q exp(2 pi i [1/2 x tau x^T + x m''^T / 2])` with
/// `x = q + m'/2`, truncated so that the omitted tail is below `eps`.
pub fn theta_constant(m: ThetaCharacteristic, tau: &SiegelPoint, eps: f64) -> Result<Complex64> {
    let r = truncation_radius(tau.min_imag_eigenvalue(), eps)?;
    let (t1, t2, t3) = (tau.t1(), tau.t2(), tau.t3());
    let shift = [f64::from(m.a[0]) / 2.0, f64::from(m.a[1]) / 2.0];
    let half_b = [f64::from(m.b[0]) / 2.0, f64::from(m.b[1]) / 2.0];
    let range = |s: f64| {
        let lo = (-r - s).ceil() as i64;
        let hi = (r - s).floor() as i64;
        lo..=hi
    };
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut sum = Complex64::new(0.0, 0.0);
    for q1 in range(shift[0]) {
        let x1 = q1 as f64 + shift[0];
        for q2 in range(shift[1]) {
            let x2 = q2 as f64 + shift[1];
            let quad = 0.5 * (t1 * x1 * x1 + 2.0 * t2 * x1 * x2 + t3 * x2 * x2);
            let lin = x1 * half_b[0] + x2 * half_b[1];
            sum += (two_pi_i * (quad + lin)).exp();
        }
    }
    Ok(sum)
}

/// `prod_{m even} Theta_m(tau)^2`.
pub fn theta_squared_product(tau: &SiegelPoint, eps: f64) -> Result<Complex64> {
    let mut out = Complex64::new(1.0, 0.0);
    for m in ThetaCharacteristic::even() {
        let t = theta_constant(m, tau, eps)?;
        out *= t * t;
    }
    Ok(out)
}
