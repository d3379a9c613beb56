//! Python bindings: potentials, coherent states, dynamics and the algebra checks.

use cohstate_core::coherent::{self as cs, CoeffSeq, CsOptions};
use cohstate_core::{dynamics, opalgebra, potentials, Complex64, Error};
use pyo3::exceptions::{PyNotImplementedError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::NormDrift { .. } | Error::NonConvergence { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn options(numeric: bool, check_truncation: bool) -> CsOptions {
    let base = if numeric {
        CsOptions::numeric()
    } else {
        CsOptions::default()
    };
    if check_truncation {
        base
    } else {
        base.unchecked()
    }
}

/// An exactly solvable potential.
#[pyclass(name = "Potential", frozen)]
struct PyPotential {
    spec: potentials::PotentialSpec,
}

#[pymethods]
impl PyPotential {
    #[staticmethod]
    fn morse(lam: f64) -> PyResult<Self> {
        let spec = potentials::PotentialSpec::morse(lam).map_err(to_py)?;
        Ok(PyPotential { spec })
    }

    #[staticmethod]
    fn spt(rho: f64) -> PyResult<Self> {
        let spec = potentials::PotentialSpec::spt(rho).map_err(to_py)?;
        Ok(PyPotential { spec })
    }

    #[staticmethod]
    fn pt(kappa: f64, rho: f64) -> PyResult<Self> {
        let spec = potentials::PotentialSpec::pt(kappa, rho).map_err(to_py)?;
        Ok(PyPotential { spec })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.spec.name()
    }

    fn energy(&self, n: usize) -> PyResult<f64> {
        self.spec.energy(n).map_err(to_py)
    }

    /// Display-coordinate domain `(lo, hi)`.
    fn domain(&self) -> (f64, f64) {
        self.spec.domain()
    }

    /// Normalized eigenfunction `ψ_n` at display coordinate `x`.
    fn eigenfunction(&self, n: usize, x: f64) -> PyResult<f64> {
        potentials::eigenstate(&self.spec, n)
            .and_then(|s| s.eval(x))
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Potential({:?})", self.spec)
    }
}

/// A truncated coherent state `Σ c_n ψ_n`.
#[pyclass(name = "CoherentState", frozen)]
struct PyCoherentState {
    inner: CoeffSeq,
}

#[pymethods]
impl PyCoherentState {
    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs.clone()
    }

    #[getter]
    fn param(&self) -> Complex64 {
        self.inner.param
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.inner.n_max()
    }

    #[getter]
    fn truncation_ratio(&self) -> f64 {
        self.inner.truncation_ratio
    }

    fn norm_sq(&self) -> f64 {
        self.inner.norm_sq()
    }

    fn weights(&self) -> Vec<f64> {
        self.inner.weights()
    }

    fn eval(&self, x: f64) -> PyResult<Complex64> {
        self.inner.eval(x).map_err(to_py)
    }

    fn closed_form(&self, x: f64) -> PyResult<Complex64> {
        self.inner.closed_form(x).map_err(to_py)
    }

    /// Residual of the lowering-operator eigenvalue equation (abstract bases).
    fn eigen_residual(&self) -> PyResult<f64> {
        self.inner.eigen_residual().map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.coeffs.len()
    }
}

fn wrap(r: cohstate_core::Result<CoeffSeq>) -> PyResult<PyCoherentState> {
    r.map(|inner| PyCoherentState { inner }).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (beta, b, n_max=cs::DEFAULT_N_MAX, numeric=false, check_truncation=true))]
fn chg_cs(
    beta: Complex64,
    b: f64,
    n_max: usize,
    numeric: bool,
    check_truncation: bool,
) -> PyResult<PyCoherentState> {
    wrap(cs::chg_cs_with(
        beta,
        b,
        n_max,
        options(numeric, check_truncation),
    ))
}

#[pyfunction]
#[pyo3(signature = (gamma, b, c, n_max=cs::DEFAULT_N_MAX, numeric=false, check_truncation=true))]
fn hg_cs(
    gamma: Complex64,
    b: f64,
    c: f64,
    n_max: usize,
    numeric: bool,
    check_truncation: bool,
) -> PyResult<PyCoherentState> {
    wrap(cs::hg_cs_with(
        gamma,
        b,
        c,
        n_max,
        options(numeric, check_truncation),
    ))
}

#[pyfunction]
#[pyo3(signature = (beta, lam, n_max=cs::DEFAULT_N_MAX, numeric=false, check_truncation=true))]
fn morse_cs(
    beta: Complex64,
    lam: f64,
    n_max: usize,
    numeric: bool,
    check_truncation: bool,
) -> PyResult<PyCoherentState> {
    wrap(cs::morse_cs_with(
        beta,
        lam,
        n_max,
        options(numeric, check_truncation),
    ))
}

#[pyfunction]
#[pyo3(signature = (gamma, rho, n_max=cs::DEFAULT_N_MAX, numeric=false, check_truncation=true))]
fn spt_cs(
    gamma: Complex64,
    rho: f64,
    n_max: usize,
    numeric: bool,
    check_truncation: bool,
) -> PyResult<PyCoherentState> {
    wrap(cs::spt_cs_with(
        gamma,
        rho,
        n_max,
        options(numeric, check_truncation),
    ))
}

/// PT states are always normalized numerically.
#[pyfunction]
#[pyo3(signature = (gamma, kappa, rho, n_max=cs::DEFAULT_N_MAX, check_truncation=true))]
fn pt_cs(
    gamma: Complex64,
    kappa: f64,
    rho: f64,
    n_max: usize,
    check_truncation: bool,
) -> PyResult<PyCoherentState> {
    wrap(cs::pt_cs_with(
        gamma,
        kappa,
        rho,
        n_max,
        rho + 0.5,
        options(true, check_truncation),
    ))
}

#[pyfunction]
fn spt_norm_sum(g: f64, rho: f64) -> PyResult<f64> {
    cs::spt_norm_sum(g, rho).map_err(to_py)
}

#[pyfunction]
fn spt_norm_integral(g: f64, rho: f64) -> PyResult<f64> {
    cs::spt_norm_integral(g, rho).map_err(to_py)
}

/// `A(t)` on the given times.
#[pyfunction]
fn autocorrelation(
    state: &PyCoherentState,
    potential: &PyPotential,
    t: Vec<f64>,
) -> PyResult<Vec<Complex64>> {
    dynamics::autocorrelation(&state.inner, &potential.spec, &t)
        .map(|s| s.a)
        .map_err(to_py)
}

/// Revival markers `(t, |A|², kind)` of `A(t)` above `threshold`.
#[pyfunction]
#[pyo3(signature = (state, potential, t, threshold=dynamics::DEFAULT_THRESHOLD))]
fn revivals(
    state: &PyCoherentState,
    potential: &PyPotential,
    t: Vec<f64>,
    threshold: f64,
) -> PyResult<Vec<(f64, f64, &'static str)>> {
    let series = dynamics::autocorrelation(&state.inner, &potential.spec, &t).map_err(to_py)?;
    Ok(dynamics::revival_scan(&series, threshold)
        .into_iter()
        .map(|m| (m.t, m.value, m.kind.label()))
        .collect())
}

/// Density rows (one per `x`) and the per-time quadrature norms.
#[pyfunction]
fn evolve(
    py: Python<'_>,
    state: &PyCoherentState,
    potential: &PyPotential,
    x: Vec<f64>,
    t: Vec<f64>,
) -> PyResult<(Vec<Vec<f64>>, Vec<f64>)> {
    let grid = py
        .detach(|| dynamics::evolve(&state.inner, &potential.spec, &x, &t))
        .map_err(to_py)?;
    let rows = (0..grid.x.len()).map(|j| grid.row(j).to_vec()).collect();
    Ok((rows, grid.slice_norms))
}

#[pyfunction]
#[pyo3(signature = (b, max_n=30))]
fn su11_confluent_residual(b: f64, max_n: usize) -> PyResult<f64> {
    opalgebra::Su11::confluent(b)
        .closure_residual(max_n)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (lam, max_n=30))]
fn su11_laguerre_residual(lam: f64, max_n: usize) -> PyResult<f64> {
    opalgebra::Su11::perelomov(lam)
        .closure_residual(max_n)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (b, max_n=30))]
fn heisenberg_weyl_residual(b: f64, max_n: usize) -> PyResult<f64> {
    opalgebra::heisenberg_weyl_residual(&opalgebra::k_minus(b), &opalgebra::k_tilde_plus(b), max_n)
        .map_err(to_py)
}

/// Coefficients of the truncated series solution of `F(D) y = P y`
/// for `F(D) = D(D + b − 1)` and `P = βx`, starting from `x⁰`.
#[pyfunction]
fn confluent_series(beta: Complex64, b: f64, n_terms: usize) -> PyResult<Vec<Complex64>> {
    let f = opalgebra::RationalD::product(vec![b - 1.0, 0.0]);
    let y =
        opalgebra::series_solve(&f, &(beta * opalgebra::LinOp::x()), 0, n_terms).map_err(to_py)?;
    Ok((0..=n_terms).map(|k| y.coeff(k)).collect())
}

#[pymodule]
fn cohstate(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPotential>()?;
    m.add_class::<PyCoherentState>()?;
    m.add_function(wrap_pyfunction!(chg_cs, m)?)?;
    m.add_function(wrap_pyfunction!(hg_cs, m)?)?;
    m.add_function(wrap_pyfunction!(morse_cs, m)?)?;
    m.add_function(wrap_pyfunction!(spt_cs, m)?)?;
    m.add_function(wrap_pyfunction!(pt_cs, m)?)?;
    m.add_function(wrap_pyfunction!(spt_norm_sum, m)?)?;
    m.add_function(wrap_pyfunction!(spt_norm_integral, m)?)?;
    m.add_function(wrap_pyfunction!(autocorrelation, m)?)?;
    m.add_function(wrap_pyfunction!(revivals, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(su11_confluent_residual, m)?)?;
    m.add_function(wrap_pyfunction!(su11_laguerre_residual, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_weyl_residual, m)?)?;
    m.add_function(wrap_pyfunction!(confluent_series, m)?)?;
    Ok(())
}
