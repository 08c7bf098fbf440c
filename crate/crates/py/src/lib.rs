//! Python bindings.
//!
//! Structured results (limits, expansions, sum rules, bound reports,
//! approximation solutions) are returned as plain dicts that mirror the
//! JSON emitted by the command-line tool.

use herglotz_core::asymptotics as asy;
use herglotz_core::boundary::{self, LimitSchedule};
use herglotz_core::bounds::{self, BandSpec};
use herglotz_core::circuits;
use herglotz_core::herglotz::{self, HerglotzFn, HerglotzRep};
use herglotz_core::measures::MeasureSpec;
use herglotz_core::passive_approx::{self, ApproxProblem, Norm, SolverConfig};
use herglotz_core::Error;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

create_exception!(herglotz_kit, ConvergenceError, PyException);

fn err(e: Error) -> PyErr {
    if e.is_convergence() {
        ConvergenceError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn from_json<T: DeserializeOwned>(s: &str) -> PyResult<T> {
    serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Converts a serializable value into Python objects via the json module.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<PyObject> {
    let text = to_json(v)?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

fn schedule(y_values: Option<Vec<f64>>, eps_values: Option<Vec<f64>>) -> PyResult<LimitSchedule> {
    let mut s = LimitSchedule::default();
    if let Some(y) = y_values {
        s.y_values = y;
    }
    if let Some(e) = eps_values {
        s.eps_values = e;
    }
    s.validate().map_err(err)?;
    Ok(s)
}

#[pyclass(name = "HerglotzFunction", module = "herglotz_kit")]
#[derive(Clone)]
struct PyHerglotz {
    inner: HerglotzFn,
}

#[pymethods]
impl PyHerglotz {
    /// `a + b z + sum m (1/(xi - z) - xi/(1 + xi^2))` over point masses `(xi, m)`.
    #[staticmethod]
    #[pyo3(signature = (a, b, point_masses = Vec::new()))]
    fn canonical(a: f64, b: f64, point_masses: Vec<(f64, f64)>) -> PyResult<Self> {
        let rep = HerglotzRep::new(a, b, MeasureSpec::discrete(point_masses)).map_err(err)?;
        Ok(PyHerglotz { inner: HerglotzFn::canonical(rep) })
    }

    #[staticmethod]
    fn tan() -> Self {
        PyHerglotz { inner: HerglotzFn::Tan }
    }

    #[staticmethod]
    fn log() -> Self {
        PyHerglotz { inner: HerglotzFn::Log }
    }

    #[staticmethod]
    fn sqrt() -> Self {
        PyHerglotz { inner: HerglotzFn::Sqrt }
    }

    #[staticmethod]
    fn h_delta(delta: f64) -> PyResult<Self> {
        Ok(PyHerglotz { inner: HerglotzFn::h_delta(delta).map_err(err)? })
    }

    /// Accepts either a function descriptor or a bare canonical representation.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = match serde_json::from_str::<HerglotzFn>(text) {
            Ok(f) => f,
            Err(_) => HerglotzFn::canonical(from_json::<HerglotzRep>(text)?),
        };
        inner.validate().map_err(err)?;
        Ok(PyHerglotz { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn __call__(&self, z: Complex64) -> PyResult<Complex64> {
        self.inner.eval(z).map_err(err)
    }

    fn eval(&self, z: Complex64) -> PyResult<Complex64> {
        self.inner.eval(z).map_err(err)
    }

    fn neg_inverse(&self) -> Self {
        PyHerglotz { inner: HerglotzFn::neg_inverse(self.inner.clone()) }
    }

    fn compose(&self, inner: &PyHerglotz) -> PyResult<Self> {
        Ok(PyHerglotz { inner: herglotz::compose(self.inner.clone(), inner.inner.clone()).map_err(err)? })
    }

    /// Largest negative imaginary part over a sampled upper half-plane grid.
    fn positivity_violation(&self) -> f64 {
        herglotz::positivity_violation(&self.inner, &herglotz::default_grid())
    }

    fn __repr__(&self) -> String {
        format!("HerglotzFunction({})", serde_json::to_string(&self.inner).unwrap_or_default())
    }
}

#[pyclass(name = "Circuit", module = "herglotz_kit")]
#[derive(Clone)]
struct PyCircuit {
    inner: circuits::Circuit,
}

#[pymethods]
impl PyCircuit {
    #[staticmethod]
    fn series_rl(l: f64, r: f64) -> PyResult<Self> {
        Ok(PyCircuit { inner: circuits::Circuit::series_rl(l, r).map_err(err)? })
    }

    #[staticmethod]
    fn resistor(r: f64) -> PyResult<Self> {
        Ok(PyCircuit { inner: circuits::Circuit::resistor(r).map_err(err)? })
    }

    #[staticmethod]
    fn shunt_c(c: f64, inner: &PyCircuit) -> PyResult<Self> {
        Ok(PyCircuit { inner: circuits::Circuit::shunt_c(c, inner.inner.clone()).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: circuits::Circuit = from_json(text)?;
        inner.validate().map_err(err)?;
        Ok(PyCircuit { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn impedance(&self, s: Complex64) -> PyResult<Complex64> {
        self.inner.impedance(s).map_err(err)
    }

    fn frequency_response(&self, omega: f64) -> Complex64 {
        self.inner.frequency_response(omega)
    }

    fn herglotz(&self) -> PyResult<PyHerglotz> {
        Ok(PyHerglotz { inner: self.inner.herglotz().map_err(err)? })
    }

    /// Energy delivered by samples `u[j]` at `t = j dt` up to `t_end`.
    fn energy(&self, u: Vec<f64>, t_end: f64, dt: f64) -> PyResult<f64> {
        let e = circuits::admittance_energy(&u, circuits::EnergySource::Circuit(&self.inner), t_end, dt).map_err(err)?;
        Ok(e.energy)
    }

    fn resistance_integral(&self, py: Python<'_>, window: f64) -> PyResult<PyObject> {
        to_py(py, &bounds::resistance_integral(&self.inner, window).map_err(err)?)
    }
}

#[pyfunction]
#[pyo3(signature = (f, x1, x2, y_values = None, eps_values = None))]
fn stieltjes_invert(py: Python<'_>, f: &PyHerglotz, x1: f64, x2: f64, y_values: Option<Vec<f64>>, eps_values: Option<Vec<f64>>) -> PyResult<PyObject> {
    let s = schedule(y_values, eps_values)?;
    to_py(py, &boundary::stieltjes_invert(&f.inner, x1, x2, &s).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (f, alpha, y_values = None))]
fn point_mass_at(py: Python<'_>, f: &PyHerglotz, alpha: f64, y_values: Option<Vec<f64>>) -> PyResult<PyObject> {
    let s = schedule(y_values, None)?;
    to_py(py, &boundary::point_mass_at(&f.inner, alpha, &s).map_err(err)?)
}

#[pyfunction]
fn expand_at_infinity(py: Python<'_>, f: &PyHerglotz, order: i32) -> PyResult<PyObject> {
    to_py(py, &asy::expand_at_infinity(&f.inner, order).map_err(err)?)
}

#[pyfunction]
fn expand_at_zero(py: Python<'_>, f: &PyHerglotz, order: i32) -> PyResult<PyObject> {
    to_py(py, &asy::expand_at_zero(&f.inner, order).map_err(err)?)
}

/// `at` is one of "zero", "infinity" or "symmetric".
#[pyfunction]
#[pyo3(signature = (f, p, at = "zero", y_values = None, eps_values = None))]
fn sum_rule(py: Python<'_>, f: &PyHerglotz, p: i32, at: &str, y_values: Option<Vec<f64>>, eps_values: Option<Vec<f64>>) -> PyResult<PyObject> {
    let s = schedule(y_values, eps_values)?;
    let r = match at {
        "zero" => asy::sum_rule_at_zero(&f.inner, p, &s),
        "infinity" => asy::sum_rule_at_infinity(&f.inner, p, &s),
        "symmetric" => asy::symmetric_sum_rule(&f.inner, p, &s),
        _ => return Err(PyValueError::new_err(format!("unknown location {at:?}"))),
    };
    to_py(py, &r.map_err(err)?)
}

#[pyfunction]
fn resistance_integral_bound(c: f64) -> PyResult<f64> {
    bounds::resistance_integral_bound(c).map_err(err)
}

#[pyfunction]
fn bandwidth_resistance_bound(omega1: f64, omega2: f64, c: f64) -> PyResult<f64> {
    bounds::bandwidth_resistance_bound(omega1, omega2, c).map_err(err)
}

#[pyfunction]
fn amplitude_lower_bound(b1: f64, b1_0: f64, omega_length: f64) -> PyResult<f64> {
    bounds::amplitude_lower_bound(b1, b1_0, omega_length).map_err(err)
}

#[pyfunction]
fn metamaterial_bound(eps_t: f64, eps_inf: f64, b: f64) -> PyResult<f64> {
    bounds::metamaterial_bound(eps_t, eps_inf, b).map_err(err)
}

/// JSON for a constant negative-permittivity target on `[omega0(1 - B/2), omega0(1 + B/2)]`.
#[pyfunction]
#[pyo3(signature = (eps_t, omega0, b, basis_count = 20, order = 4, sample_count = 100))]
fn metamaterial_problem(eps_t: f64, omega0: f64, b: f64, basis_count: usize, order: usize, sample_count: usize) -> PyResult<String> {
    let band = BandSpec::new(omega0, b).map_err(err)?;
    to_json(&ApproxProblem::metamaterial(eps_t, band, basis_count, order, sample_count).map_err(err)?)
}

/// Solves a problem given as JSON; returns `{"solution": ..., "bound": ...}`.
#[pyfunction]
#[pyo3(signature = (problem, p = None, kgon = 64, tol = 1e-8, max_iter = 200))]
fn solve_approx(py: Python<'_>, problem: &str, p: Option<&str>, kgon: usize, tol: f64, max_iter: usize) -> PyResult<PyObject> {
    let mut pr: ApproxProblem = from_json(problem)?;
    match p {
        Some("2") => pr.p = Norm::L2,
        Some("inf") => pr.p = Norm::LInf,
        Some(other) => return Err(PyValueError::new_err(format!("p must be \"2\" or \"inf\", got {other:?}"))),
        None => {}
    }
    let sol = passive_approx::solve(&pr, &SolverConfig { kgon, tol, max_iter }).map_err(err)?;
    let bound = passive_approx::bound_gap_report(&sol, &pr).ok();
    to_py(py, &serde_json::json!({ "solution": sol, "bound": bound }))
}

#[pymodule]
fn herglotz_kit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConvergenceError", m.py().get_type_bound::<ConvergenceError>())?;
    m.add_class::<PyHerglotz>()?;
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(stieltjes_invert, m)?)?;
    m.add_function(wrap_pyfunction!(point_mass_at, m)?)?;
    m.add_function(wrap_pyfunction!(expand_at_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(expand_at_zero, m)?)?;
    m.add_function(wrap_pyfunction!(sum_rule, m)?)?;
    m.add_function(wrap_pyfunction!(resistance_integral_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bandwidth_resistance_bound, m)?)?;
    m.add_function(wrap_pyfunction!(amplitude_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(metamaterial_bound, m)?)?;
    m.add_function(wrap_pyfunction!(metamaterial_problem, m)?)?;
    m.add_function(wrap_pyfunction!(solve_approx, m)?)?;
    Ok(())
}
