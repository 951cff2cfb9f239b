//! Genus-2 theta constants in double precision: Siegel points, the
//! symplectic action, and numerical modularity checks of the product of
//! the ten even theta squares.

mod check;
mod series;
mod symplectic;

pub use check::{
    check_modularity, random_siegel_point, random_word, run_theta_check, vanishing_residual,
    ThetaCheckReport, ThetaTest,
};
pub use series::{
    theta_constant, theta_squared_product, truncation_radius, ThetaCharacteristic, MIN_EIGENVALUE,
};
pub use symplectic::{act, det_c_tau_d, generators, SymplecticMatrix};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Leading minors of `Im tau` must exceed this.
pub const PD_TOLERANCE: f64 = 1e-12;

/// A point `tau = [[t1, t2], [t2, t3]]` of the Siegel upper half space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiegelPoint {
    tau: [[Complex64; 2]; 2],
}

impl SiegelPoint {
    pub fn new(t1: Complex64, t2: Complex64, t3: Complex64) -> Result<Self> {
        let (y1, y2, y3) = (t1.im, t2.im, t3.im);
        let finite = [t1, t2, t3].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::NotSiegel("non-finite entry".into()));
        }
        if y1 <= PD_TOLERANCE || y1 * y3 - y2 * y2 <= PD_TOLERANCE {
            return Err(Error::NotSiegel(format!(
                "Im tau = [[{y1}, {y2}], [{y2}, {y3}]] is not positive definite"
            )));
        }
        Ok(SiegelPoint { tau: [[t1, t2], [t2, t3]] })
    }

    /// Parses `"t1r,t1i,t2r,t2i,t3r,t3i"`.
    pub fn parse(s: &str) -> Result<Self> {
        let xs: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidArgument(format!("tau: {e}")))?;
        if xs.len() != 6 {
            return Err(Error::InvalidArgument(format!(
                "tau needs 6 numbers t1r,t1i,t2r,t2i,t3r,t3i (got {})",
                xs.len()
            )));
        }
        SiegelPoint::new(
            Complex64::new(xs[0], xs[1]),
            Complex64::new(xs[2], xs[3]),
            Complex64::new(xs[4], xs[5]),
        )
    }

    pub fn diagonal(t1: Complex64, t3: Complex64) -> Result<Self> {
        SiegelPoint::new(t1, Complex64::new(0.0, 0.0), t3)
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.tau
    }

    pub fn t1(&self) -> Complex64 {
        self.tau[0][0]
    }

    pub fn t2(&self) -> Complex64 {
        self.tau[0][1]
    }

    pub fn t3(&self) -> Complex64 {
        self.tau[1][1]
    }

    /// Smallest eigenvalue of `Im tau`.
    pub fn min_imag_eigenvalue(&self) -> f64 {
        let (a, b, c) = (self.t1().im, self.t2().im, self.t3().im);
        let mean = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        mean - rad
    }

    /// `tau + B` for an integer symmetric `B = [[b1, b2], [b2, b3]]`.
    pub fn translate(&self, b1: i64, b2: i64, b3: i64) -> Self {
        let r = |z: Complex64, n: i64| z + Complex64::new(n as f64, 0.0);
        SiegelPoint {
            tau: [[r(self.t1(), b1), r(self.t2(), b2)], [r(self.t2(), b2), r(self.t3(), b3)]],
        }
    }

    pub fn max_abs_diff(&self, other: &SiegelPoint) -> f64 {
        [(self.t1(), other.t1()), (self.t2(), other.t2()), (self.t3(), other.t3())]
            .iter()
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::fmt::Display for SiegelPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.t1(), self.t2(), self.t2(), self.t3())
    }
}
