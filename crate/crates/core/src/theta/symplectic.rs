//! Integral symplectic matrices and their action on the Siegel space.

use num_complex::Complex64;
use serde::Serialize;

use super::SiegelPoint;
use crate::error::{Error, Result};

/// Largest accepted condition number of `C tau + D`.
pub const MAX_CONDITION: f64 = 1e12;

type M2 = [[Complex64; 2]; 2];

/// A matrix `(A B; C D)` in `Sp_4(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymplecticMatrix {
    m: [[i64; 4]; 4],
}

const J: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];

fn mul4(a: &[[i64; 4]; 4], b: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn transpose4(a: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i];
        }
    }
    out
}

impl SymplecticMatrix {
    /// Checks `m^T J m = J` exactly.
    pub fn new(m: [[i64; 4]; 4]) -> Result<Self> {
        let overflow = m.iter().flatten().any(|x| x.unsigned_abs() > 1 << 20);
        if overflow || mul4(&transpose4(&m), &mul4(&J, &m)) != J {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticMatrix { m })
    }

    pub fn identity() -> Self {
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        SymplecticMatrix { m }
    }

    pub fn j() -> Self {
        SymplecticMatrix { m: J }
    }

    /// `(I B; 0 I)` for symmetric `B = [[b1, b2], [b2, b3]]`.
    pub fn translation(b1: i64, b2: i64, b3: i64) -> Self {
        let mut m = Self::identity().m;
        m[0][2] = b1;
        m[0][3] = b2;
        m[1][2] = b2;
        m[1][3] = b3;
        SymplecticMatrix { m }
    }

    /// `(U 0; 0 U^{-T})` for `U` in `GL_2(Z)`.
    pub fn block(u: [[i64; 2]; 2]) -> Result<Self> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(Error::InvalidArgument(format!("det U = {det}, expected +-1")));
        }
        // U^{-T} = adj(U)^T / det
        let w = [[u[1][1] * det, -u[1][0] * det], [-u[0][1] * det, u[0][0] * det]];
        let mut m = [[0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = u[i][j];
                m[i + 2][j + 2] = w[i][j];
            }
        }
        Self::new(m)
    }

    pub fn entries(&self) -> [[i64; 4]; 4] {
        self.m
    }

    pub fn mul(&self, other: &SymplecticMatrix) -> Result<Self> {
        Self::new(mul4(&self.m, &other.m))
    }

    /// `g^{-1} = -J g^T J`.
    pub fn inverse(&self) -> Self {
        let t = mul4(&J, &mul4(&transpose4(&self.m), &J));
        SymplecticMatrix { m: t.map(|r| r.map(|x| -x)) }
    }

    fn block_c(&self, r: usize, c: usize) -> M2 {
        let e = |i: usize, j: usize| Complex64::new(self.m[r + i][c + j] as f64, 0.0);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// Membership in `Gamma_{1,p}`: `g - 1` has column 4 divisible by `p`,
    /// row 2 divisible by `p` and entry `(2,4)` divisible by `p^2`.
    pub fn is_in_gamma1p(&self, p: u64) -> Result<bool> {
        crate::divisor::fine::require_level_prime(p)?;
        let p = p as i64;
        for i in 0..4 {
            for j in 0..4 {
                let x = self.m[i][j] - i64::from(i == j);
                let modulus = match (i, j) {
                    (1, 3) => p * p,
                    (1, _) | (_, 3) => p,
                    _ => 1,
                };
                if x % modulus != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}, {}, {}, {}]", r[0], r[1], r[2], r[3]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn mul2(a: &M2, b: &M2) -> M2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn add2(a: &M2, b: &M2) -> M2 {
    [[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]]
}

fn det2(a: &M2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn frobenius(a: &M2) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn c_tau_d(g: &SymplecticMatrix, tau: &SiegelPoint) -> M2 {
    add2(&mul2(&g.block_c(2, 0), &tau.matrix()), &g.block_c(2, 2))
}

/// `det(C tau + D)`.
pub fn det_c_tau_d(g: &SymplecticMatrix, tau: &SiegelPoint) -> Complex64 {
    det2(&c_tau_d(g, tau))
}

/// `g . tau = (A tau + B)(C tau + D)^{-1}`, symmetrized.
pub fn act(g: &SymplecticMatrix, tau: &SiegelPoint) -> Result<SiegelPoint> {
    let m = c_tau_d(g, tau);
    let det = det2(&m);
    let inv = [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]];
    let cond = frobenius(&m) * frobenius(&inv);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::Singular(cond));
    }
    let num = add2(&mul2(&g.block_c(0, 0), &tau.matrix()), &g.block_c(0, 2));
    let r = mul2(&num, &inv);
    let off = 0.5 * (r[0][1] + r[1][0]);
    SiegelPoint::new(r[0][0], off, r[1][1])
}

/// Generators of `Sp_4(Z)`: `J`, translations by symmetric `B` with
/// entries in `{-1, 0, 1}`, and `(U, U^{-T})` for generators `U` of
/// `GL_2(Z)` and their inverses.
pub fn generators() -> Vec<SymplecticMatrix> {
    let mut out = vec![SymplecticMatrix::j(), SymplecticMatrix::j().inverse()];
    for b1 in -1..=1 {
        for b2 in -1..=1 {
            for b3 in -1..=1 {
                if (b1, b2, b3) != (0, 0, 0) {
                    out.push(SymplecticMatrix::translation(b1, b2, b3));
                }
            }
        }
    }
    for u in [
        [[0, 1], [1, 0]],
        [[1, 1], [0, 1]],
        [[1, -1], [0, 1]],
        [[1, 0], [1, 1]],
        [[1, 0], [-1, 1]],
        [[-1, 0], [0, 1]],
    ] {
        out.push(SymplecticMatrix::block(u).expect("unimodular"));
    }
    out
}
