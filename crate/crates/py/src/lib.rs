//! Python module `moduli`: exact polynomials, intersection numbers, Chern
//! numbers, trace contributions, dimension formulas and theta constants.

use moduli_core::algebra::{int, parse_poly, render_rational, Poly, Rational};
use moduli_core::chern::ChernNumbers;
use moduli_core::dimension::{self, ComparisonSource};
use moduli_core::divisor::{parse_divisor_expr, TrilinearForm};
use moduli_core::report::Check;
use moduli_core::theta::{self, SiegelPoint, SymplecticMatrix, ThetaCharacteristic, ThetaTest};
use moduli_core::trace::{self, CaseId};
use moduli_core::verify::{self as suites, Suite};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: moduli_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn form(table: Option<&str>) -> PyResult<TrilinearForm> {
    match table {
        Some(path) => TrilinearForm::load_path(std::path::Path::new(path)).map_err(err),
        None => Ok(TrilinearForm::shipped()),
    }
}

fn rational_str(r: &Rational) -> String {
    render_rational(r)
}

/// A polynomial in `p` and `k` with rational coefficients.
#[pyclass(name = "Poly", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPoly {
    inner: Poly,
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPoly { inner: parse_poly(text).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        PyPoly { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        PyPoly { inner: &self.inner * &other.inner }
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly { inner: -self.inner.clone() }
    }

    /// Coefficient of `k^j`.
    fn coeff_k(&self, j: u32) -> PyPoly {
        PyPoly { inner: self.inner.coeff_k(j) }
    }

    /// Substitutes integers for `p` and/or `k`; returns a `Poly`.
    #[pyo3(signature = (p=None, k=None))]
    fn subs(&self, p: Option<i64>, k: Option<i64>) -> PyPoly {
        let (p, k) = (p.map(int), k.map(int));
        PyPoly { inner: self.inner.eval(p.as_ref(), k.as_ref()) }
    }

    /// Exact value at `p` (and `k`) as a `"num/den"` string.
    #[pyo3(signature = (p, k=None))]
    fn evaluate(&self, p: i64, k: Option<i64>) -> PyResult<String> {
        let v = self.inner.eval(Some(&int(p)), k.map(int).as_ref());
        v.as_constant()
            .map(|r| rational_str(&r))
            .ok_or_else(|| PyValueError::new_err(format!("{v} still depends on k")))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

/// Triple intersection number of a divisor expression.
#[pyfunction]
#[pyo3(signature = (expr, table=None))]
fn intersect(expr: &str, table: Option<&str>) -> PyResult<PyPoly> {
    let f = form(table)?;
    let q = parse_divisor_expr(expr).map_err(err)?;
    Ok(PyPoly { inner: q.evaluate(&f).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (table=None))]
fn k_cubed(table: Option<&str>) -> PyResult<PyPoly> {
    Ok(PyPoly { inner: moduli_core::divisor::k_cubed(&form(table)?) })
}

#[pyfunction]
#[pyo3(signature = (table=None))]
fn rr_cubic(table: Option<&str>) -> PyResult<PyPoly> {
    Ok(PyPoly { inner: moduli_core::divisor::rr_cubic(&form(table)?) })
}

/// `dim S_k` for `group` in `{"gamma1p", "gamma2sq"}`, as a string.
#[pyfunction]
fn dim_cusp(group: &str, p: u64, k: i64) -> PyResult<String> {
    let v = match group {
        "gamma1p" => dimension::dim_cusp_gamma1p(p, k),
        "gamma2sq" => dimension::dim_cusp_gamma2(p, k),
        _ => return Err(PyValueError::new_err(format!("unknown group '{group}'"))),
    };
    Ok(rational_str(&v.map_err(err)?))
}

#[pyfunction]
fn dim_cusp_poly(group: &str) -> PyResult<PyPoly> {
    let inner = match group {
        "gamma1p" => dimension::dim_cusp_gamma1p_poly(),
        "gamma2sq" => dimension::dim_cusp_gamma2_poly(),
        _ => return Err(PyValueError::new_err(format!("unknown group '{group}'"))),
    };
    Ok(PyPoly { inner })
}

/// Chern numbers keyed `c1^3`, `c1c2`, `c3`, `pa`, `c2L`, `c2D0`; polynomials
/// when `prime` is omitted, exact values otherwise.
#[pyfunction]
#[pyo3(signature = (prime=None, table=None))]
fn chern_numbers<'py>(py: Python<'py>, prime: Option<u64>, table: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
    let n = ChernNumbers::compute(&form(table)?);
    let d = PyDict::new(py);
    match prime {
        None => {
            for (key, v) in [("c1^3", &n.c1_cubed), ("c1c2", &n.c1_c2), ("c3", &n.c3), ("pa", &n.pa), ("c2L", &n.c2_l), ("c2D0", &n.c2_d0)] {
                d.set_item(key, PyPoly { inner: v.clone() })?;
            }
        }
        Some(p) => {
            let v = n.at(p).map_err(err)?;
            for (key, r) in [("c1^3", &v.c1_cubed), ("c1c2", &v.c1_c2), ("c3", &v.c3), ("pa", &v.pa), ("c2L", &v.c2_l), ("c2D0", &v.c2_d0)] {
                d.set_item(key, rational_str(r))?;
            }
        }
    }
    Ok(d)
}

/// `(k2, k1)` coefficients of a trace contribution (`"1a"` .. `"2c_B2"`).
#[pyfunction]
fn trace_contribution(case: &str) -> PyResult<(PyPoly, PyPoly)> {
    let c = CaseId::parse(case).ok_or_else(|| PyValueError::new_err(format!("unknown case '{case}'")))?;
    let t = trace::trace(&trace::builtin_record(c)).map_err(err)?;
    Ok((PyPoly { inner: t.k2 }, PyPoly { inner: t.k1 }))
}

#[pyfunction]
fn trace_total() -> (PyPoly, PyPoly) {
    let t = trace::total_trace_sum();
    (PyPoly { inner: t.k2 }, PyPoly { inner: t.k1 })
}

fn checks_to_py<'py>(py: Python<'py>, checks: &[Check]) -> PyResult<Vec<Bound<'py, PyDict>>> {
    checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("lhs", &c.lhs)?;
            d.set_item("rhs", &c.rhs)?;
            d.set_item("pass", c.pass)?;
            d.set_item("residual", c.residual.clone())?;
            Ok(d)
        })
        .collect()
}

/// Runs a verification suite; returns `(all_pass, checks)`.
#[pyfunction]
#[pyo3(signature = (suite="all", prime_range=None, use_paper_display=false, table=None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    prime_range: Option<&str>,
    use_paper_display: bool,
    table: Option<&str>,
) -> PyResult<(bool, Vec<Bound<'py, PyDict>>)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let primes = match prime_range {
        Some(r) => suites::parse_prime_range(r).map_err(err)?,
        None => Vec::new(),
    };
    let source = if use_paper_display {
        ComparisonSource::PublishedDisplay
    } else {
        ComparisonSource::DirectSubtraction
    };
    let r = suites::run_verify(suite, &form(table)?, source, &primes).map_err(err)?;
    Ok((r.pass, checks_to_py(py, &r.checks)?))
}

fn siegel(tau: [(f64, f64); 3]) -> PyResult<SiegelPoint> {
    let c = |(re, im): (f64, f64)| Complex64::new(re, im);
    SiegelPoint::new(c(tau[0]), c(tau[1]), c(tau[2])).map_err(err)
}

/// `Theta_m(tau)` for `tau = (t1, t2, t3)` and a characteristic `"a1,a2;b1,b2"`.
#[pyfunction]
#[pyo3(signature = (t1, t2, t3, characteristic, eps=1e-12))]
fn theta_constant(t1: Complex64, t2: Complex64, t3: Complex64, characteristic: &str, eps: f64) -> PyResult<Complex64> {
    let tau = siegel([(t1.re, t1.im), (t2.re, t2.im), (t3.re, t3.im)])?;
    let m = ThetaCharacteristic::parse(characteristic).map_err(err)?;
    theta::theta_constant(m, &tau, eps).map_err(err)
}

/// Product of the squares of the ten even theta constants.
#[pyfunction]
#[pyo3(signature = (t1, t2, t3, eps=1e-14))]
fn theta_squared(t1: Complex64, t2: Complex64, t3: Complex64, eps: f64) -> PyResult<Complex64> {
    let tau = siegel([(t1.re, t1.im), (t2.re, t2.im), (t3.re, t3.im)])?;
    theta::theta_squared_product(&tau, eps).map_err(err)
}

/// Largest residual of a seeded randomized check: `"modularity"`,
/// `"vanishing"` or `"omega"`.
#[pyfunction]
#[pyo3(signature = (test, samples=20, seed=0, eps=1e-14))]
fn theta_check(test: &str, samples: usize, seed: u64, eps: f64) -> PyResult<f64> {
    let t: ThetaTest = test.parse().map_err(err)?;
    Ok(theta::run_theta_check(t, samples, seed, eps, f64::INFINITY).map_err(err)?.max_residual)
}

/// Membership of a 4x4 integer symplectic matrix in `Gamma_{1,p}`.
#[pyfunction]
fn is_in_gamma1p(m: [[i64; 4]; 4], p: u64) -> PyResult<bool> {
    SymplecticMatrix::new(m).map_err(err)?.is_in_gamma1p(p).map_err(err)
}

#[pyfunction]
fn divisor_census(p: u64) -> PyResult<u64> {
    moduli_core::divisor::divisor_census(p).map_err(err)
}

#[pymodule]
fn moduli(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(k_cubed, m)?)?;
    m.add_function(wrap_pyfunction!(rr_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(dim_cusp, m)?)?;
    m.add_function(wrap_pyfunction!(dim_cusp_poly, m)?)?;
    m.add_function(wrap_pyfunction!(chern_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(trace_contribution, m)?)?;
    m.add_function(wrap_pyfunction!(trace_total, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(theta_constant, m)?)?;
    m.add_function(wrap_pyfunction!(theta_squared, m)?)?;
    m.add_function(wrap_pyfunction!(theta_check, m)?)?;
    m.add_function(wrap_pyfunction!(is_in_gamma1p, m)?)?;
    m.add_function(wrap_pyfunction!(divisor_census, m)?)?;
    Ok(())
}
