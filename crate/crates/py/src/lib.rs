//! Python bindings: grids, reaction models, stencil kernels, and the
//! config-driven experiment runner, exposed as the `rdweno_py` module.
//!
//! Build the importable extension with
//! `cargo build -p rdweno-py --release --features extension-module`
//! and rename `librdweno_py.so` to `rdweno_py.so` (or run
//! `python/smoke_test.py`, which does both).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use rdweno::report::RunStatus;

fn value_err(message: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(message.to_string())
}

fn window_from(values: Vec<f64>) -> PyResult<[f64; 6]> {
    values
        .try_into()
        .map_err(|v: Vec<f64>| value_err(format!("stencil window needs 6 values, got {}", v.len())))
}

/// Uniform 1D mesh on `[a, b]` with `n_cells + 1` nodes.
#[pyclass(name = "Grid", skip_from_py_object)]
#[derive(Clone)]
struct PyGrid {
    inner: rdweno::Grid,
}

#[pymethods]
impl PyGrid {
    #[new]
    fn new(a: f64, b: f64, n_cells: usize) -> PyResult<Self> {
        Ok(PyGrid {
            inner: rdweno::Grid::new(a, b, n_cells).map_err(value_err)?,
        })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b()
    }

    #[getter]
    fn n_cells(&self) -> usize {
        self.inner.n_cells()
    }

    #[getter]
    fn dx(&self) -> f64 {
        self.inner.dx()
    }

    #[getter]
    fn points(&self) -> usize {
        self.inner.points()
    }

    /// Node coordinates as a list.
    fn xs(&self) -> Vec<f64> {
        self.inner.xs().collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Grid(a={}, b={}, n_cells={})",
            self.inner.a(),
            self.inner.b(),
            self.inner.n_cells()
        )
    }
}

/// Reaction kinetics with exact traveling-wave profiles.
#[pyclass(name = "ReactionModel", skip_from_py_object)]
#[derive(Clone)]
struct PyReactionModel {
    inner: rdweno::ReactionModel,
}

#[pymethods]
impl PyReactionModel {
    #[staticmethod]
    fn fisher(d: f64, rho: f64) -> PyResult<Self> {
        Ok(PyReactionModel {
            inner: rdweno::ReactionModel::fisher(d, rho).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn zeldovich(d: f64, rho: f64) -> PyResult<Self> {
        Ok(PyReactionModel {
            inner: rdweno::ReactionModel::zeldovich(d, rho).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn nws(d: f64, rho: f64, alpha: f64) -> PyResult<Self> {
        Ok(PyReactionModel {
            inner: rdweno::ReactionModel::nws(d, rho, alpha).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn bistable(d: f64, rho: f64, beta: f64) -> PyResult<Self> {
        Ok(PyReactionModel {
            inner: rdweno::ReactionModel::bistable(d, rho, beta).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn lotka_volterra(d: f64, rho: f64) -> PyResult<Self> {
        Ok(PyReactionModel {
            inner: rdweno::ReactionModel::lotka_volterra(d, rho).map_err(value_err)?,
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind_name()
    }

    #[getter]
    fn species_count(&self) -> usize {
        self.inner.species_count()
    }

    #[getter]
    fn front_level(&self) -> f64 {
        self.inner.front_level()
    }

    /// Source term R(u) for a species vector.
    fn reaction_term(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        if u.len() != self.inner.species_count() {
            return Err(value_err(format!(
                "expected {} species values, got {}",
                self.inner.species_count(),
                u.len()
            )));
        }
        Ok(self.inner.reaction_term(&u))
    }

    /// Exact wave profile at (x, t), one value per species.
    fn exact_solution(&self, x: f64, t: f64) -> Vec<f64> {
        self.inner.exact_solution(x, t)
    }

    /// Signed front speed of the exact wave.
    fn exact_speed(&self) -> f64 {
        self.inner.exact_speed()
    }

    /// Per-species diffusion coefficients.
    fn diffusion(&self) -> Vec<f64> {
        self.inner.diffusion()
    }

    /// Equilibrium states the wave connects: (left limits, right limits).
    fn equilibria(&self) -> (Vec<f64>, Vec<f64>) {
        self.inner.equilibria()
    }

    /// Exact profile sampled on a grid at time t, one list per species.
    fn sample_exact(&self, grid: &PyGrid, t: f64) -> Vec<Vec<f64>> {
        let field = self.inner.sample_exact(&grid.inner, t);
        (0..field.species_count())
            .map(|s| field.species(s).to_vec())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "ReactionModel(kind='{}', d={}, rho={})",
            self.inner.kind_name(),
            self.inner.d(),
            self.inner.rho()
        )
    }
}

/// Spatial scheme selector with its regularizer.
#[pyclass(name = "SchemeSpec", skip_from_py_object)]
#[derive(Clone)]
struct PySchemeSpec {
    inner: rdweno::SchemeSpec,
}

fn scheme_spec(kind: rdweno::Scheme, epsilon: Option<f64>) -> PyResult<PySchemeSpec> {
    let inner = match epsilon {
        None => rdweno::SchemeSpec::new(kind),
        Some(eps) => rdweno::SchemeSpec::with_epsilon(kind, eps),
    };
    if !inner.is_valid() {
        return Err(value_err("epsilon must be positive"));
    }
    Ok(PySchemeSpec { inner })
}

#[pymethods]
impl PySchemeSpec {
    #[staticmethod]
    fn fd6() -> Self {
        PySchemeSpec {
            inner: rdweno::SchemeSpec::new(rdweno::Scheme::Fd6),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (epsilon=None))]
    fn weno_lsz(epsilon: Option<f64>) -> PyResult<Self> {
        scheme_spec(rdweno::Scheme::WenoLsz, epsilon)
    }

    #[staticmethod]
    #[pyo3(signature = (epsilon=None))]
    fn mweno(epsilon: Option<f64>) -> PyResult<Self> {
        scheme_spec(rdweno::Scheme::Mweno, epsilon)
    }

    #[staticmethod]
    #[pyo3(signature = (epsilon=None))]
    fn cweno(epsilon: Option<f64>) -> PyResult<Self> {
        scheme_spec(rdweno::Scheme::Cweno, epsilon)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.name()
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }

    fn __repr__(&self) -> String {
        format!(
            "SchemeSpec(kind='{}', epsilon={:e})",
            self.inner.kind.name(),
            self.inner.epsilon
        )
    }
}

/// Full-stencil sixth-order flux on a 6-point window.
#[pyfunction]
fn fd_flux(window: Vec<f64>) -> PyResult<f64> {
    Ok(rdweno::fd_flux(&window_from(window)?))
}

/// The three substencil fluxes on a 6-point window.
#[pyfunction]
fn substencil_fluxes(window: Vec<f64>) -> PyResult<[f64; 3]> {
    Ok(rdweno::substencil_fluxes(&window_from(window)?))
}

/// Central candidate flux on a 6-point window.
#[pyfunction]
fn central_flux(window: Vec<f64>) -> PyResult<f64> {
    Ok(rdweno::central_flux(&window_from(window)?))
}

/// Substencil smoothness indicators (b0, b1, b2).
#[pyfunction]
fn smoothness_indicators(window: Vec<f64>) -> PyResult<[f64; 3]> {
    Ok(rdweno::smoothness_indicators(&window_from(window)?))
}

/// Smoothness indicator of the central candidate.
#[pyfunction]
fn central_smoothness(window: Vec<f64>) -> PyResult<f64> {
    Ok(rdweno::central_smoothness(&window_from(window)?))
}

/// WENO-LSZ nonlinear weights from the indicators.
#[pyfunction]
fn lsz_weights(betas: [f64; 3], epsilon: f64) -> PyResult<[f64; 3]> {
    rdweno::lsz_weights(betas, epsilon).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// MWENO signed nonlinear weights from the indicators.
#[pyfunction]
fn mweno_weights(betas: [f64; 3], epsilon: f64) -> [f64; 3] {
    rdweno::mweno_weights(betas, epsilon)
}

/// CWENO nonlinear weights over the four candidates.
#[pyfunction]
fn cweno_weights(betas: [f64; 3], beta_c: f64, epsilon: f64) -> [f64; 4] {
    rdweno::cweno_weights(betas, beta_c, epsilon)
}

/// Scheme flux at the window's half point.
#[pyfunction]
fn weno_flux(window: Vec<f64>, scheme: &PySchemeSpec) -> PyResult<f64> {
    rdweno::weno_flux(&window_from(window)?, &scheme.inner)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Second derivative of single-species nodal values with constant ghost
/// extension from the Dirichlet pair; boundary entries are zero.
#[pyfunction]
fn second_derivative(
    values: Vec<f64>,
    grid: &PyGrid,
    left: f64,
    right: f64,
    scheme: &PySchemeSpec,
) -> PyResult<Vec<f64>> {
    if values.len() != grid.inner.points() {
        return Err(value_err(format!(
            "expected {} nodal values, got {}",
            grid.inner.points(),
            values.len()
        )));
    }
    let field = rdweno::StateField::from_fn(1, values.len(), |_, i| values[i]);
    let bc = rdweno::BoundarySpec::scalar(left, right);
    let result = rdweno::second_derivative(&field, &grid.inner, &bc, &scheme.inner)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(result.species(0).to_vec())
}

/// Mean error norms (l1, l2, linf) between two nodal arrays.
#[pyfunction]
fn error_norms(numeric: Vec<f64>, exact: Vec<f64>) -> PyResult<(f64, f64, f64)> {
    if numeric.len() != exact.len() || numeric.is_empty() {
        return Err(value_err("arrays must have equal nonzero length"));
    }
    let a = rdweno::StateField::from_fn(1, numeric.len(), |_, i| numeric[i]);
    let b = rdweno::StateField::from_fn(1, exact.len(), |_, i| exact[i]);
    let norms = rdweno::error_norms(&a, &b).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((norms[0].l1, norms[0].l2, norms[0].linf))
}

/// Observed order between consecutive (N, error) refinement pairs.
#[pyfunction]
fn convergence_order(errors: Vec<(usize, f64)>) -> PyResult<Vec<f64>> {
    rdweno::convergence_order(&errors).map_err(value_err)
}

/// First level crossing of a nodal profile from the left.
#[pyfunction]
fn front_position(values: Vec<f64>, grid: &PyGrid, level: f64) -> PyResult<f64> {
    if values.len() != grid.inner.points() {
        return Err(value_err("values length must match the grid"));
    }
    let field = rdweno::StateField::from_fn(1, values.len(), |_, i| values[i]);
    rdweno::front_position(&field, &grid.inner, level, 0).map_err(value_err)
}

/// Available preset names with one-line descriptions.
#[pyfunction]
fn list_presets() -> Vec<(String, String)> {
    rdweno::presets::list()
        .iter()
        .map(|p| (p.name.to_string(), p.about.to_string()))
        .collect()
}

/// Parse a TOML config (plus optional key.path=value overrides), run it in
/// memory, and return the report as a dict.
#[pyfunction]
#[pyo3(signature = (text, overrides=None))]
fn run_config<'py>(
    py: Python<'py>,
    text: &str,
    overrides: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyDict>> {
    let config = rdweno::parse_config_with_overrides(text, &overrides.unwrap_or_default())
        .map_err(value_err)?;
    let output = rdweno::execute(&config).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let record = &output.report.record;

    let dict = PyDict::new(py);
    dict.set_item("preset", record.preset.clone())?;
    dict.set_item("model", record.model_kind.clone())?;
    dict.set_item("d", record.d)?;
    dict.set_item("rho", record.rho)?;
    dict.set_item("alpha", record.alpha)?;
    dict.set_item("beta", record.beta)?;
    dict.set_item("a", record.a)?;
    dict.set_item("b", record.b)?;
    dict.set_item("n_cells", record.n_cells)?;
    dict.set_item("scheme", record.scheme.clone())?;
    dict.set_item("epsilon", record.epsilon)?;
    dict.set_item("cfl", record.cfl)?;
    dict.set_item("t_final", record.t_final)?;
    dict.set_item("steps", record.steps)?;
    dict.set_item("duration_s", output.report.duration.as_secs_f64())?;
    match record.status {
        RunStatus::Ok => {
            dict.set_item("status", "ok")?;
            dict.set_item("blowup_t", py.None())?;
        }
        RunStatus::BlowUp { t } => {
            dict.set_item("status", "blowup")?;
            dict.set_item("blowup_t", t)?;
        }
    }
    let species = PyList::empty(py);
    for sp in &record.species {
        let entry = PyDict::new(py);
        match sp.norms {
            Some(n) => {
                entry.set_item("l1", n.l1)?;
                entry.set_item("l2", n.l2)?;
                entry.set_item("linf", n.linf)?;
            }
            None => {
                entry.set_item("l1", py.None())?;
                entry.set_item("l2", py.None())?;
                entry.set_item("linf", py.None())?;
            }
        }
        entry.set_item("front_x", sp.front_x)?;
        entry.set_item("front_speed", sp.front_speed)?;
        species.append(entry)?;
    }
    dict.set_item("species", species)?;
    Ok(dict)
}

#[pymodule]
fn rdweno_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyReactionModel>()?;
    m.add_class::<PySchemeSpec>()?;
    m.add_function(wrap_pyfunction!(fd_flux, m)?)?;
    m.add_function(wrap_pyfunction!(substencil_fluxes, m)?)?;
    m.add_function(wrap_pyfunction!(central_flux, m)?)?;
    m.add_function(wrap_pyfunction!(smoothness_indicators, m)?)?;
    m.add_function(wrap_pyfunction!(central_smoothness, m)?)?;
    m.add_function(wrap_pyfunction!(lsz_weights, m)?)?;
    m.add_function(wrap_pyfunction!(mweno_weights, m)?)?;
    m.add_function(wrap_pyfunction!(cweno_weights, m)?)?;
    m.add_function(wrap_pyfunction!(weno_flux, m)?)?;
    m.add_function(wrap_pyfunction!(second_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(error_norms, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_order, m)?)?;
    m.add_function(wrap_pyfunction!(front_position, m)?)?;
    m.add_function(wrap_pyfunction!(list_presets, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    Ok(())
}
