//! Python bindings: `import pylogsine`.
//!
//! Angles are accepted as strings (`"pi/2"`, `"2pi/3"`, `"0.75"`), floats
//! or [`PyAngle`] objects. Numeric results come back as
//! `(value, error_estimate)` tuples.

use pyo3::exceptions::{PyNotImplementedError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use logsine::exact::{rational, Angle, SymbolicExpr};
use logsine::{cli, logsine as ls, newman, quadrature, special, Error, EvalResult};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Singularity(_) => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn pair(r: EvalResult) -> (f64, f64) {
    (r.value, r.error_estimate)
}

#[derive(FromPyObject)]
enum AngleArg {
    Angle(PyAngle),
    Text(String),
    Real(f64),
}

impl AngleArg {
    fn resolve(self) -> PyResult<Angle> {
        match self {
            AngleArg::Angle(a) => Ok(a.inner),
            AngleArg::Text(s) => cli::parse_angle(&s).map_err(py_err),
            AngleArg::Real(v) => Ok(Angle::real(v)),
        }
    }
}

/// An angle, either an exact rational multiple of pi or a plain real.
#[pyclass(name = "Angle", module = "pylogsine", frozen, from_py_object)]
#[derive(Clone)]
struct PyAngle {
    inner: Angle,
}

#[pymethods]
impl PyAngle {
    #[new]
    fn new(angle: AngleArg) -> PyResult<Self> {
        Ok(PyAngle {
            inner: angle.resolve()?,
        })
    }

    #[getter]
    fn value(&self) -> f64 {
        self.inner.value()
    }

    #[getter]
    fn is_exact(&self) -> bool {
        self.inner.is_exact()
    }

    fn latex(&self) -> String {
        self.inner.latex()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Angle('{}')", self.inner)
    }

    fn __float__(&self) -> f64 {
        self.inner.value()
    }
}

/// Exact linear combination of `pi^k` times `1`, `log 2`, `zeta(odd)` and
/// Clausen values, with rational coefficients.
#[pyclass(name = "SymbolicExpr", module = "pylogsine", frozen)]
struct PySymbolicExpr {
    inner: SymbolicExpr,
}

#[pymethods]
impl PySymbolicExpr {
    fn latex(&self) -> String {
        self.inner.render_latex()
    }

    fn value(&self) -> PyResult<f64> {
        self.inner.numeric_value().map_err(py_err)
    }

    /// `[(coeff, pi_power, atom), ...]` with `coeff` as `"p/q"`.
    fn terms(&self) -> Vec<(String, u32, String)> {
        self.inner
            .terms()
            .map(|t| (t.coeff.to_string(), t.pi_power, t.atom.to_string()))
            .collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("expression serializes")
    }

    fn __add__(&self, other: &PySymbolicExpr) -> PySymbolicExpr {
        wrap(self.inner.add(&other.inner))
    }

    fn __sub__(&self, other: &PySymbolicExpr) -> PySymbolicExpr {
        wrap(self.inner.sub(&other.inner))
    }

    fn __neg__(&self) -> PySymbolicExpr {
        wrap(self.inner.neg())
    }

    fn __eq__(&self, other: &PySymbolicExpr) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __float__(&self) -> PyResult<f64> {
        self.value()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SymbolicExpr('{}')", self.inner)
    }
}

fn wrap(inner: SymbolicExpr) -> PySymbolicExpr {
    PySymbolicExpr { inner }
}

#[pyfunction]
fn parse_angle(text: &str) -> PyResult<PyAngle> {
    Ok(PyAngle {
        inner: cli::parse_angle(text).map_err(py_err)?,
    })
}

#[pyfunction]
fn zeta(n: i64) -> PyResult<(f64, f64)> {
    special::zeta_int(n).map(pair).map_err(py_err)
}

#[pyfunction]
fn zeta_symbolic(n: i64) -> PyResult<PySymbolicExpr> {
    special::zeta_int_symbolic(n).map(wrap).map_err(py_err)
}

#[pyfunction]
fn bernoulli(n: usize) -> String {
    special::bernoulli(n).to_string()
}

#[pyfunction]
fn clausen(n: u32, theta: AngleArg) -> PyResult<(f64, f64)> {
    special::clausen(n, &theta.resolve()?)
        .map(pair)
        .map_err(py_err)
}

#[pyfunction]
fn clausen_symbolic(n: u32, theta: AngleArg) -> PyResult<PySymbolicExpr> {
    special::clausen_symbolic(n, &theta.resolve()?)
        .map(wrap)
        .map_err(py_err)
}

#[pyfunction]
fn upsilon(n: u32, x: AngleArg) -> PyResult<(f64, f64)> {
    newman::upsilon(n, &x.resolve()?).map(pair).map_err(py_err)
}

#[pyfunction]
fn upsilon_symbolic(n: u32, x: AngleArg) -> PyResult<PySymbolicExpr> {
    newman::upsilon_symbolic(n, &x.resolve()?)
        .map(wrap)
        .map_err(py_err)
}

#[pyfunction]
fn upsilon_recursive_oracle(n: u32, x: AngleArg) -> PyResult<(f64, f64)> {
    newman::upsilon_recursive_oracle(n, &x.resolve()?)
        .map(pair)
        .map_err(py_err)
}

#[pyfunction]
fn upsilon_nested(n: u32, x: AngleArg) -> PyResult<(f64, f64)> {
    newman::upsilon_nested(n, &x.resolve()?)
        .map(pair)
        .map_err(py_err)
}

#[pyfunction]
fn logsine_moment(m: u32, x: AngleArg) -> PyResult<(f64, f64)> {
    ls::logsine_moment(m, &x.resolve()?)
        .map(pair)
        .map_err(py_err)
}

#[pyfunction]
fn logsine_moment_symbolic(m: u32, x: AngleArg) -> PyResult<PySymbolicExpr> {
    ls::logsine_moment_symbolic(m, &x.resolve()?)
        .map(wrap)
        .map_err(py_err)
}

#[pyfunction]
fn oracle_logsine_moment(m: u32, x: AngleArg) -> PyResult<(f64, f64)> {
    quadrature::oracle_logsine_moment(m, &x.resolve()?)
        .map(|r| (r.value, r.error_estimate))
        .map_err(py_err)
}

/// `int_0^z t^q log(2 sin(t/2)) dt`
#[pyfunction]
fn ls_closed(q: u32, z: AngleArg) -> PyResult<(f64, f64)> {
    ls::ls_closed(q, &z.resolve()?)
        .map(|c| pair(c.value))
        .map_err(py_err)
}

#[pyfunction]
fn ls_closed_symbolic(q: u32, z: AngleArg) -> PyResult<PySymbolicExpr> {
    ls::ls_closed_symbolic(q, &z.resolve()?)
        .map(wrap)
        .map_err(py_err)
}

#[pyfunction]
fn oracle_ls(q: u32, z: AngleArg) -> PyResult<(f64, f64)> {
    quadrature::oracle_ls(q, &z.resolve()?)
        .map(|r| (r.value, r.error_estimate))
        .map_err(py_err)
}

/// Returned as a `"p/q"` string.
#[pyfunction]
fn collapse_sum(m: u32, k: u32) -> PyResult<String> {
    ls::collapse_sum(m, k)
        .map(|r| r.to_string())
        .map_err(py_err)
}

#[pyfunction]
fn cot_moment(m: u32, x: AngleArg) -> PyResult<(f64, f64)> {
    ls::cot_moment(m, &x.resolve()?).map(pair).map_err(py_err)
}

/// `log S_r(z)`; `z` may be a float or a `(p, q)` pair for `p/q`.
#[pyfunction]
fn log_multiple_sine(r: u32, z: &Bound<'_, PyAny>) -> PyResult<(f64, f64)> {
    if let Ok((p, q)) = z.extract::<(i64, i64)>() {
        if q == 0 {
            return Err(PyZeroDivisionError::new_err("zero denominator"));
        }
        return ls::log_multiple_sine_exact(r, &rational(p, q))
            .map(pair)
            .map_err(py_err);
    }
    ls::log_multiple_sine(r, z.extract()?)
        .map(pair)
        .map_err(py_err)
}

#[pyfunction]
fn log_multiple_sine_quadrature(r: u32, z: f64) -> PyResult<(f64, f64)> {
    ls::log_multiple_sine_quadrature(r, z)
        .map(|q| (q.value, q.error_estimate))
        .map_err(py_err)
}

#[pymodule]
fn pylogsine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAngle>()?;
    m.add_class::<PySymbolicExpr>()?;
    m.add_function(wrap_pyfunction!(parse_angle, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(clausen, m)?)?;
    m.add_function(wrap_pyfunction!(clausen_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_recursive_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_nested, m)?)?;
    m.add_function(wrap_pyfunction!(logsine_moment, m)?)?;
    m.add_function(wrap_pyfunction!(logsine_moment_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_logsine_moment, m)?)?;
    m.add_function(wrap_pyfunction!(ls_closed, m)?)?;
    m.add_function(wrap_pyfunction!(ls_closed_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_ls, m)?)?;
    m.add_function(wrap_pyfunction!(collapse_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cot_moment, m)?)?;
    m.add_function(wrap_pyfunction!(log_multiple_sine, m)?)?;
    m.add_function(wrap_pyfunction!(log_multiple_sine_quadrature, m)?)?;
    Ok(())
}
