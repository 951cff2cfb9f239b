//! Randomized numerical checks of the transformation law of `Theta^2`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    act, det_c_tau_d, generators, theta_constant, theta_squared_product, SiegelPoint,
    SymplecticMatrix, ThetaCharacteristic,
};
use crate::error::{Error, Result};

/// Relative size below which `Theta^2(tau)` counts as zero.
const ZERO_RATIO: f64 = 1e-8;

/// Product of the nine largest `|Theta_m(tau)|^2`, `m` even.
fn scale_of_nine(tau: &SiegelPoint, eps: f64) -> Result<f64> {
    let mut sq = ThetaCharacteristic::even()
        .into_iter()
        .map(|m| theta_constant(m, tau, eps).map(|t| t.norm_sqr()))
        .collect::<Result<Vec<f64>>>()?;
    sq.sort_by(|a, b| b.total_cmp(a));
    Ok(sq[..9].iter().product())
}

/// `|Theta^2(tau)|` relative to the nine largest factors.
pub fn vanishing_residual(tau: &SiegelPoint, eps: f64) -> Result<f64> {
    Ok(theta_squared_product(tau, eps)?.norm() / scale_of_nine(tau, eps)?)
}

/// `|F(g tau) - det(C tau + D)^w F(tau)| / |det(C tau + D)^w F(tau)|` for
/// `F = Theta^2` (`w = 10`) or `F = (Theta^2)^6` (`w = 60`). When
/// `F(tau)` vanishes to working precision the denominator is
/// `|det|^w` times the power of the nine largest factors.
pub fn check_modularity(g: &SymplecticMatrix, tau: &SiegelPoint, weight: u32, eps: f64) -> Result<f64> {
    let power = match weight {
        10 => 1,
        60 => 6,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "weight {weight} is not 10 (Theta^2) or 60 (Theta^12)"
            )))
        }
    };
    let image = act(g, tau)?;
    let lhs = theta_squared_product(&image, eps)?.powi(power);
    let f = theta_squared_product(tau, eps)?;
    let det = det_c_tau_d(g, tau).powi(weight as i32);
    let rhs = det * f.powi(power);
    let nine = scale_of_nine(tau, eps)?;
    let denom = if f.norm() < ZERO_RATIO * nine {
        det.norm() * nine.powi(power)
    } else {
        rhs.norm()
    };
    Ok((lhs - rhs).norm() / denom)
}

/// A random point with `Re tau` in `[-1/2, 1/2]` and `Im tau` having
/// diagonal in `[0.8, 1.6]` and off-diagonal in `[-0.3, 0.3]`.
pub fn random_siegel_point<R: Rng>(rng: &mut R) -> SiegelPoint {
    let mut re = || rng.random_range(-0.5..=0.5);
    let (x1, x2, x3) = (re(), re(), re());
    let y1 = rng.random_range(0.8..=1.6);
    let y2 = rng.random_range(-0.3..=0.3);
    let y3 = rng.random_range(0.8..=1.6);
    SiegelPoint::new(Complex64::new(x1, y1), Complex64::new(x2, y2), Complex64::new(x3, y3))
        .expect("positive definite by construction")
}

/// A product of `len` random generators.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> SymplecticMatrix {
    let gens = generators();
    let mut g = SymplecticMatrix::identity();
    for _ in 0..len {
        let h = gens[rng.random_range(0..gens.len())];
        g = g.mul(&h).expect("product of symplectic matrices");
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaTest {
    /// Weight-10 law for `Theta^2` under random words.
    Modularity,
    /// `Theta^2` on `tau_2 in Z`, and the six odd thetas at generic points.
    Vanishing,
    /// Weight-60 law for `Theta^12`.
    Omega,
}

impl std::str::FromStr for ThetaTest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modularity" => Ok(ThetaTest::Modularity),
            "vanishing" => Ok(ThetaTest::Vanishing),
            "omega" => Ok(ThetaTest::Omega),
            _ => Err(Error::InvalidArgument(format!("unknown theta test '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaCheckReport {
    pub test: ThetaTest,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
    pub tol: f64,
    pub max_residual: f64,
    pub pass: bool,
}

pub const WORD_LENGTH: usize = 5;

/// Runs `samples` seeded trials and reports the largest residual.
pub fn run_theta_check(test: ThetaTest, samples: usize, seed: u64, eps: f64, tol: f64) -> Result<ThetaCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    for _ in 0..samples {
        let tau = random_siegel_point(&mut rng);
        let r = match test {
            ThetaTest::Modularity => check_modularity(&random_word(&mut rng, WORD_LENGTH), &tau, 10, eps)?,
            ThetaTest::Omega => check_modularity(&random_word(&mut rng, WORD_LENGTH), &tau, 60, eps)?,
            ThetaTest::Vanishing => {
                let n = rng.random_range(-1i64..=1);
                let on_delta = SiegelPoint::new(tau.t1(), Complex64::new(n as f64, 0.0), tau.t3())?;
                let mut r = vanishing_residual(&on_delta, eps)?;
                for m in ThetaCharacteristic::odd() {
                    r = r.max(theta_constant(m, &tau, eps)?.norm());
                }
                r
            }
        };
        max_residual = max_residual.max(r);
    }
    Ok(ThetaCheckReport {
        test,
        samples,
        seed,
        eps,
        tol,
        max_residual,
        pass: max_residual.is_finite() && max_residual < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_residual_is_zero() {
        let t = SiegelPoint::new(c(0.1, 1.1), c(0.2, 0.3), c(-0.2, 1.4)).unwrap();
        assert_eq!(check_modularity(&SymplecticMatrix::identity(), &t, 10, 1e-14).unwrap(), 0.0);
        assert!(check_modularity(&SymplecticMatrix::identity(), &t, 12, 1e-14).is_err());
    }

    #[test]
    fn j_at_reducible_point() {
        let t = SiegelPoint::diagonal(c(0.0, 1.0), c(0.0, 1.3)).unwrap();
        assert!(check_modularity(&SymplecticMatrix::j(), &t, 10, 1e-14).unwrap() < 1e-8);
    }

    #[test]
    fn j_at_generic_point() {
        let t = SiegelPoint::new(c(0.1, 1.0), c(0.2, 0.25), c(-0.3, 1.3)).unwrap();
        assert!(vanishing_residual(&t, 1e-14).unwrap() > 1e-4);
        assert!(check_modularity(&SymplecticMatrix::j(), &t, 10, 1e-14).unwrap() < 1e-9);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let a = run_theta_check(ThetaTest::Modularity, 3, 7, 1e-14, 1e-7).unwrap();
        let b = run_theta_check(ThetaTest::Modularity, 3, 7, 1e-14, 1e-7).unwrap();
        assert_eq!(a, b);
        assert!(a.pass, "{a:?}");
    }

    #[test]
    fn test_names() {
        assert_eq!("omega".parse::<ThetaTest>().unwrap(), ThetaTest::Omega);
        assert!("other".parse::<ThetaTest>().is_err());
    }
}
