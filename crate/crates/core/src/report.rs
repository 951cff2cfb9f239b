//! Report records shared by the verification suites. Exact values are
//! rendered as strings, never floats.

use serde::{Serialize, Serializer};

use crate::algebra::{render_rational, Poly, Rational};

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render_rational(r))
}

pub fn ser_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// One named pass/fail comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Check {
    pub fn exact(name: impl Into<String>, lhs: String, rhs: String, pass: bool) -> Self {
        Check {
            name: name.into(),
            lhs,
            rhs,
            pass,
            residual: None,
            tolerance: None,
        }
    }

    /// Exact comparison of two polynomials.
    pub fn poly_eq(name: impl Into<String>, lhs: &Poly, rhs: &Poly) -> Self {
        Check::exact(name, lhs.to_string(), rhs.to_string(), lhs == rhs)
    }

    pub fn rational_eq(name: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        Check::exact(name, render_rational(lhs), render_rational(rhs), lhs == rhs)
    }

    /// `value <= tolerance`.
    pub fn numeric(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            lhs: format!("{value:e}"),
            rhs: format!("<= {tolerance:e}"),
            pass: value.is_finite() && value <= tolerance,
            residual: Some(format!("{value:e}")),
            tolerance: Some(tolerance),
        }
    }

    pub fn with_residual(mut self, r: String) -> Self {
        self.residual = Some(r);
        self
    }
}
