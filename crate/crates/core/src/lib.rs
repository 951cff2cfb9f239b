//! Exact invariants of the desingularized compactified moduli space of
//! (1,p)-polarized abelian surfaces with canonical level structure, plus a
//! numerical toolkit for genus-2 theta constants.
//!
//! Everything except [`theta`] is exact: results are polynomials in `p`
//! (and the weight `k`) with rational coefficients.

pub mod algebra;
pub mod chern;
pub mod dimension;
pub mod divisor;
pub mod error;
pub mod report;
pub mod theta;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
