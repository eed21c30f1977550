//! Python bindings: phase vectors, coefficient synthesis, closed-form
//! families, Gram and entropy checks, and the flat-phase search.
//!
//! Coefficient vectors cross the boundary as `list[complex]`, basis states as
//! `d × d` nested lists. Invalid input raises `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use equibasis::families::{self as fam, FamilyId};
use equibasis::search as srch;
use equibasis::{basis, math, BasisLabel, Complex, SearchConfig};

fn value_err(e: equibasis::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn phases(theta: Vec<f64>) -> PyResult<math::PhaseVector> {
    math::PhaseVector::new(theta).map_err(value_err)
}

/// Free Fourier phases, reduced to `[0, 2π)`.
#[pyclass(name = "PhaseVector", module = "equibasis_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyPhaseVector {
    inner: math::PhaseVector,
}

#[pymethods]
impl PyPhaseVector {
    #[new]
    fn new(theta: Vec<f64>) -> PyResult<Self> {
        Ok(Self { inner: phases(theta)? })
    }

    #[getter]
    fn theta(&self) -> Vec<f64> {
        self.inner.theta().to_vec()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    /// Gauge-fixed copy with `theta[0] == 0`.
    fn canonical(&self) -> Self {
        Self { inner: self.inner.canonical() }
    }

    fn coefficients(&self) -> Vec<Complex> {
        math::synthesize_coefficients(&self.inner).into_inner()
    }

    fn flatness_residual(&self) -> f64 {
        srch::flatness_residual(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.d()
    }

    fn __repr__(&self) -> String {
        format!("PhaseVector({:?})", self.inner.theta())
    }
}

#[pyclass(name = "GramReport", module = "equibasis_py", frozen, get_all)]
pub struct PyGramReport {
    d: usize,
    max_offdiag: f64,
    max_diag_dev: f64,
    /// `((m, n), (m', n'))` of the entry furthest from the identity.
    worst_pair: ((usize, usize), (usize, usize)),
    passes: bool,
}

impl From<basis::GramReport> for PyGramReport {
    fn from(r: basis::GramReport) -> Self {
        let (p, q) = r.worst_pair;
        Self {
            d: r.d,
            max_offdiag: r.max_offdiag,
            max_diag_dev: r.max_diag_dev,
            worst_pair: ((p.m, p.n), (q.m, q.n)),
            passes: r.passes(),
        }
    }
}

#[pymethods]
impl PyGramReport {
    fn __repr__(&self) -> String {
        format!(
            "GramReport(d={}, max_offdiag={:e}, max_diag_dev={:e}, passes={})",
            self.d, self.max_offdiag, self.max_diag_dev, self.passes
        )
    }
}

#[pyclass(name = "Certificate", module = "equibasis_py", frozen, get_all)]
pub struct PyCertificate {
    residual: f64,
    gram_max_offdiag: f64,
    gram_max_diag_dev: f64,
    entanglement: f64,
    gram_pass: bool,
    maximal: bool,
}

impl From<srch::Certificate> for PyCertificate {
    fn from(c: srch::Certificate) -> Self {
        Self {
            residual: c.residual,
            gram_max_offdiag: c.gram.max_offdiag,
            gram_max_diag_dev: c.gram.max_diag_dev,
            entanglement: c.entanglement.value(),
            gram_pass: c.gram_pass(),
            maximal: c.maximal(),
        }
    }
}

#[pymethods]
impl PyCertificate {
    fn __repr__(&self) -> String {
        format!(
            "Certificate(residual={:e}, entanglement={}, gram_pass={}, maximal={})",
            self.residual, self.entanglement, self.gram_pass, self.maximal
        )
    }
}

#[pyclass(name = "SearchResult", module = "equibasis_py", frozen, get_all)]
pub struct PySearchResult {
    theta: Vec<f64>,
    residual: f64,
    iterations: usize,
    converged: bool,
    restart_index: usize,
}

#[pymethods]
impl PySearchResult {
    fn __repr__(&self) -> String {
        format!(
            "SearchResult(converged={}, residual={:e}, iterations={}, restart_index={})",
            self.converged, self.residual, self.iterations, self.restart_index
        )
    }
}

#[pyfunction]
fn root_of_unity(d: usize, p: i64) -> PyResult<Complex> {
    math::root_of_unity(d, p).map_err(value_err)
}

/// `a_k = (1/d) Σ_α e^{iθ_α} ξ^{kα}`.
#[pyfunction]
fn synthesize_coefficients(theta: Vec<f64>) -> PyResult<Vec<Complex>> {
    Ok(math::synthesize_coefficients(&phases(theta)?).into_inner())
}

#[pyfunction]
fn autocorrelation(coeffs: Vec<Complex>, m: usize) -> PyResult<Complex> {
    math::autocorrelation(&coeffs, m).map_err(value_err)
}

#[pyfunction]
fn entanglement(coeffs: Vec<Complex>) -> PyResult<f64> {
    math::entanglement(&coeffs).map(|e| e.value()).map_err(value_err)
}

#[pyfunction]
fn dft(v: Vec<Complex>) -> Vec<Complex> {
    math::dft(&v)
}

#[pyfunction]
fn idft(v: Vec<Complex>) -> Vec<Complex> {
    math::idft(&v)
}

/// Closed-form family coefficients; `param` in radians.
#[pyfunction]
fn family(name: &str, param: f64) -> PyResult<Vec<Complex>> {
    let id: FamilyId = name.parse().map_err(PyValueError::new_err)?;
    Ok(id.coefficients(param).into_inner())
}

#[pyfunction]
fn table1_phases(d: usize, variant: usize) -> PyResult<PyPhaseVector> {
    Ok(PyPhaseVector { inner: fam::table1_phases(d, variant).map_err(value_err)?.theta0 })
}

#[pyfunction]
fn interpolate(theta0: Vec<f64>, t: f64) -> PyResult<PyPhaseVector> {
    Ok(PyPhaseVector { inner: fam::interpolate(&phases(theta0)?, t).map_err(value_err)? })
}

#[pyfunction]
fn quadratic_phases(d: usize) -> PyResult<PyPhaseVector> {
    Ok(PyPhaseVector { inner: fam::quadratic_phases(d).map_err(value_err)? })
}

/// Amplitude matrix of `|ψ_mn⟩`, rows indexed by the first system.
#[pyfunction]
fn build_state(coeffs: Vec<Complex>, m: usize, n: usize) -> PyResult<Vec<Vec<Complex>>> {
    let s = basis::build_state(&coeffs, BasisLabel { m, n }).map_err(value_err)?;
    let d = s.d();
    Ok(s.amplitudes().chunks(d).map(<[Complex]>::to_vec).collect())
}

#[pyfunction]
fn gram_check(coeffs: Vec<Complex>) -> PyResult<PyGramReport> {
    basis::gram_check(&coeffs).map(Into::into).map_err(value_err)
}

/// Entanglement of an arbitrary normalized `d × d` amplitude matrix.
#[pyfunction]
fn state_entanglement(amplitudes: Vec<Vec<Complex>>) -> PyResult<f64> {
    let d = amplitudes.len();
    if amplitudes.iter().any(|row| row.len() != d) {
        return Err(PyValueError::new_err("amplitude matrix must be square"));
    }
    let s = basis::StateVector::new(d, amplitudes.concat()).map_err(value_err)?;
    basis::state_entanglement(&s).map(|e| e.value()).map_err(value_err)
}

#[pyfunction]
fn flatness_residual(theta: Vec<f64>) -> PyResult<f64> {
    Ok(srch::flatness_residual(&phases(theta)?))
}

#[pyfunction]
fn verify_solution(theta: Vec<f64>) -> PyResult<PyCertificate> {
    Ok(srch::verify_solution(&phases(theta)?).into())
}

#[pyfunction]
#[pyo3(signature = (d, seed = 0, restarts = 32, max_iters = 10_000, tol = 1e-10))]
fn search(
    py: Python<'_>,
    d: usize,
    seed: u64,
    restarts: usize,
    max_iters: usize,
    tol: f64,
) -> PyResult<PySearchResult> {
    let cfg = SearchConfig { d, max_iters, residual_tol: tol, restarts, rng_seed: seed };
    let r = py.detach(|| srch::alternating_projection_search(&cfg)).map_err(value_err)?;
    Ok(PySearchResult {
        theta: r.theta.into_inner(),
        residual: r.residual,
        iterations: r.iterations,
        converged: r.converged,
        restart_index: r.restart_index,
    })
}

#[pymodule]
fn equibasis_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPhaseVector>()?;
    m.add_class::<PyGramReport>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(root_of_unity, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(autocorrelation, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement, m)?)?;
    m.add_function(wrap_pyfunction!(dft, m)?)?;
    m.add_function(wrap_pyfunction!(idft, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(table1_phases, m)?)?;
    m.add_function(wrap_pyfunction!(interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(quadratic_phases, m)?)?;
    m.add_function(wrap_pyfunction!(build_state, m)?)?;
    m.add_function(wrap_pyfunction!(gram_check, m)?)?;
    m.add_function(wrap_pyfunction!(state_entanglement, m)?)?;
    m.add_function(wrap_pyfunction!(flatness_residual, m)?)?;
    m.add_function(wrap_pyfunction!(verify_solution, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
