//! Python bindings: Pauli algebra, qubit layouts, and the braiding,
//! adiabatic and resource entry points.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use trijunction_core::compiler::{self, SweepSettings};
use trijunction_core::pauli::DEFAULT_DENSE_LIMIT;
use trijunction_core::simulator::{configuration_ground_space, project_protocol, BraidingProtocol};
use trijunction_core::{
    compile_adiabatic, count_resources, fidelity, prepare_initial, run_adiabatic, run_braiding, trijunction_h,
    Configuration, LayoutKind, Method, Propagation, Sign, TrijunctionParams,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_sign(s: &str) -> PyResult<Sign> {
    match s {
        "plus" | "+" => Ok(Sign::Plus),
        "minus" | "-" => Ok(Sign::Minus),
        other => Err(err(format!("sign must be plus or minus, got {other:?}"))),
    }
}

fn model(sites: usize, delta: f64, alpha: f64, tcoupling: f64) -> TrijunctionParams {
    TrijunctionParams { sites, delta, alpha, coupling: tcoupling, ..Default::default() }
}

fn matrix_rows(m: &trijunction_core::linalg::CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect()
}

#[pyclass(name = "PauliString", module = "trijunction", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPauliString(trijunction_core::PauliString);

#[pymethods]
impl PyPauliString {
    /// Label such as `"XIZ"`, `"-YY"` or `"+iXZ"`; qubit 0 is the last character.
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        label.parse().map(PyPauliString).map_err(err)
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.0.qubits()
    }

    #[getter]
    fn weight(&self) -> usize {
        self.0.weight()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.axes_label()
    }

    #[getter]
    fn phase(&self) -> Complex64 {
        self.0.phase().to_complex()
    }

    fn support(&self) -> Vec<usize> {
        self.0.support()
    }

    fn is_hermitian(&self) -> bool {
        self.0.is_hermitian()
    }

    fn commutes(&self, other: &PyPauliString) -> PyResult<bool> {
        self.0.commutes(&other.0).map_err(err)
    }

    fn adjoint(&self) -> Self {
        PyPauliString(self.0.adjoint())
    }

    fn to_matrix(&self) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(matrix_rows(&self.0.to_matrix(DEFAULT_DENSE_LIMIT).map_err(err)?))
    }

    fn __mul__(&self, other: &PyPauliString) -> PyResult<Self> {
        self.0.multiply(&other.0).map(PyPauliString).map_err(err)
    }

    fn __eq__(&self, other: &PyPauliString) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliString('{}')", self.0)
    }
}

#[pyclass(name = "PauliSum", module = "trijunction", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPauliSum(trijunction_core::PauliSum);

#[pymethods]
impl PyPauliSum {
    /// From `(coefficient, label)` pairs.
    #[new]
    fn new(qubits: usize, terms: Vec<(f64, String)>) -> PyResult<Self> {
        let mut sum = trijunction_core::PauliSum::new(qubits);
        for (c, label) in terms {
            let p: trijunction_core::PauliString = label.parse().map_err(err)?;
            sum.add_term(c, &p).map_err(err)?;
        }
        Ok(PyPauliSum(sum))
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.0.qubits()
    }

    /// `(coefficient, label)` in canonical order.
    fn terms(&self) -> Vec<(f64, String)> {
        self.0.terms().map(|(c, p)| (c, p.axes_label())).collect()
    }

    fn coefficient(&self, string: &PyPauliString) -> f64 {
        self.0.coefficient(&string.0)
    }

    fn to_matrix(&self) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(matrix_rows(&self.0.to_matrix(DEFAULT_DENSE_LIMIT).map_err(err)?))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliSum({} qubits, {} terms)", self.0.qubits(), self.0.len())
    }
}

#[pyclass(name = "QubitLayout", module = "trijunction", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyQubitLayout(trijunction_core::QubitLayout);

#[pymethods]
impl PyQubitLayout {
    /// `mapping` is `"coupler"` or `"continuous"`.
    #[new]
    #[pyo3(signature = (sites, mapping = "coupler"))]
    fn new(sites: usize, mapping: &str) -> PyResult<Self> {
        let kind: LayoutKind = mapping.parse().map_err(err)?;
        trijunction_core::QubitLayout::new(kind, sites).map(PyQubitLayout).map_err(err)
    }

    #[getter]
    fn mapping(&self) -> &'static str {
        self.0.kind().name()
    }

    #[getter]
    fn sites(&self) -> usize {
        self.0.sites()
    }

    #[getter]
    fn total_qubits(&self) -> usize {
        self.0.total_qubits()
    }

    fn qubit(&self, arm: u8, site: usize) -> PyResult<usize> {
        self.0.qubit(arm, site).map_err(err)
    }

    fn coupler_qubit(&self) -> Option<usize> {
        self.0.coupler_qubit()
    }

    fn sector_operator(&self) -> Option<PyPauliString> {
        self.0.sector_operator().map(PyPauliString)
    }

    /// Qubit image of `H_ab` with arms `a`, `b` topological.
    #[pyo3(signature = (a, b, delta = 1.0, alpha = 1.0, tcoupling = 1.0))]
    fn hamiltonian(&self, a: u8, b: u8, delta: f64, alpha: f64, tcoupling: f64) -> PyResult<PyPauliSum> {
        let config = Configuration::new(a, b).map_err(err)?;
        let h = trijunction_h(&config, &model(self.0.sites(), delta, alpha, tcoupling)).map_err(err)?;
        self.0.map_hamiltonian(&h).map(PyPauliSum).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("QubitLayout(sites={}, mapping='{}')", self.0.sites(), self.0.kind())
    }
}

/// Relative phase of the braid on the `H_12` ground space after `steps` steps.
#[pyfunction]
#[pyo3(signature = (sites = 1, mapping = "coupler", steps = 6, delta = 1.0, alpha = 1.0, tcoupling = 1.0))]
fn verify<'py>(
    py: Python<'py>,
    sites: usize,
    mapping: &str,
    steps: usize,
    delta: f64,
    alpha: f64,
    tcoupling: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let layout = PyQubitLayout::new(sites, mapping)?.0;
    let params = model(sites, delta, alpha, tcoupling);
    let gs = configuration_ground_space(&layout, &Configuration::new(1, 2).map_err(err)?, &params).map_err(err)?;
    let protocol = BraidingProtocol::new(&layout).map_err(err)?;
    let r = project_protocol(&protocol, steps, &gs).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("delta_phi", r.delta_phi)?;
    d.set_item("eigenphases", r.eigenphases.to_vec())?;
    d.set_item("eigenvalues", r.eigenvalues.to_vec())?;
    d.set_item("unitarity_defect", r.unitarity_defect)?;
    d.set_item("u_gs", r.u_gs.iter().map(|row| row.to_vec()).collect::<Vec<_>>())?;
    d.set_item("ground_energies", gs.energies.to_vec())?;
    Ok(d)
}

/// Six braiding steps from `Ψ±`; fidelity with `Ψ∓` and the final amplitudes.
#[pyfunction]
#[pyo3(signature = (sites = 1, mapping = "coupler", sign = "plus", delta = 1.0, alpha = 1.0, tcoupling = 1.0))]
fn braid<'py>(
    py: Python<'py>,
    sites: usize,
    mapping: &str,
    sign: &str,
    delta: f64,
    alpha: f64,
    tcoupling: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let sign = parse_sign(sign)?;
    let layout = PyQubitLayout::new(sites, mapping)?.0;
    let params = model(sites, delta, alpha, tcoupling);
    let gs = configuration_ground_space(&layout, &Configuration::new(1, 2).map_err(err)?, &params).map_err(err)?;
    let initial = prepare_initial(&gs, sign);
    let target = prepare_initial(&gs, sign.flipped());
    let fin = run_braiding(&initial, &layout, 6).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("fidelity", fidelity(&target, &fin).map_err(err)?)?;
    d.set_item("fidelity_initial", fidelity(&initial, &fin).map_err(err)?)?;
    d.set_item("initial", initial.amplitudes().to_vec())?;
    d.set_item("final", fin.amplitudes().to_vec())?;
    Ok(d)
}

/// Trotterized six-interval interpolation and the cost of its circuit.
#[pyfunction]
#[pyo3(signature = (
    sites = 1, mapping = "coupler", tau = 1.0, trotter_steps = 10, reps = 1, sign = "plus",
    delta = 1.0, alpha = 1.0, tcoupling = 1.0, exact = false
))]
#[allow(clippy::too_many_arguments)]
fn adiabatic<'py>(
    py: Python<'py>,
    sites: usize,
    mapping: &str,
    tau: f64,
    trotter_steps: usize,
    reps: usize,
    sign: &str,
    delta: f64,
    alpha: f64,
    tcoupling: f64,
    exact: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let sign = parse_sign(sign)?;
    let layout = PyQubitLayout::new(sites, mapping)?.0;
    let params = model(sites, delta, alpha, tcoupling);
    let propagation = if exact { Propagation::Exact } else { Propagation::Trotter(reps) };
    let run = run_adiabatic(&layout, &params, tau, trotter_steps, propagation, sign).map_err(err)?;
    let circuit = count_resources(&compile_adiabatic(&layout, &params, tau, trotter_steps, reps).map_err(err)?);
    let d = PyDict::new(py);
    d.set_item("fidelity", run.fidelity)?;
    d.set_item("two_qubit_count", circuit.two_qubit_count)?;
    d.set_item("depth", circuit.depth)?;
    d.set_item("gate_count", circuit.gate_count)?;
    Ok(d)
}

/// Compiled two-qubit count, depth and gate count, overall and per step.
#[pyfunction]
#[pyo3(signature = (sites, method = "braiding", mapping = "coupler", tau = 1.0, trotter_steps = 10, reps = 1))]
fn resources<'py>(
    py: Python<'py>,
    sites: usize,
    method: &str,
    mapping: &str,
    tau: f64,
    trotter_steps: usize,
    reps: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let method: Method = method.parse().map_err(err)?;
    let kind: LayoutKind = mapping.parse().map_err(err)?;
    let settings = SweepSettings { tau, trotter_steps, reps, ..Default::default() };
    let r = compiler::resources(sites, method, kind, &settings).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("method", method.name())?;
    d.set_item("mapping", kind.name())?;
    d.set_item("two_qubit_count", r.two_qubit_count)?;
    d.set_item("depth", r.depth)?;
    d.set_item("gate_count", r.gate_count)?;
    let steps: Vec<(String, usize, usize)> =
        r.per_step.into_iter().map(|s| (s.label, s.two_qubit_count, s.depth)).collect();
    d.set_item("per_step", steps)?;
    Ok(d)
}

#[pymodule]
fn trijunction(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauliString>()?;
    m.add_class::<PyPauliSum>()?;
    m.add_class::<PyQubitLayout>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(braid, m)?)?;
    m.add_function(wrap_pyfunction!(adiabatic, m)?)?;
    m.add_function(wrap_pyfunction!(resources, m)?)?;
    Ok(())
}
