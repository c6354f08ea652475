//! Python bindings: exact cyclotomic numbers, Hopf algebras (built-in or
//! loaded from JSON) and the check registry.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hopfcheck::category::modcat::{printed_module_data, sign_repair_search};
use hopfcheck::category::ty::{build_ty_data, chi_c, pentagon_check, RhoSRho};
use hopfcheck::checks::{self, Options};
use hopfcheck::cyclotomic::{parse_rational, CycQ8};
use hopfcheck::hopf::{commutativity_flags, verify_hopf_axioms, HopfAlgebra};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Convert a serde value into Python objects through the json module.
fn to_py(py: Python<'_>, v: &impl serde::Serialize) -> PyResult<PyObject> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

/// An element of Q(ζ₈), ζ = e^{iπ/4}.
#[pyclass(name = "Cyc", module = "hopfcheck_py")]
#[derive(Clone)]
pub struct PyCyc(pub CycQ8);

#[pymethods]
impl PyCyc {
    /// Cyc("1/2") is rational; Cyc(["a","b","c","d"]) is a + bζ + cζ² + dζ³.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = value.extract::<String>() {
            return Ok(PyCyc(CycQ8::from_rational(parse_rational(&s).map_err(value_err)?)));
        }
        if let Ok(n) = value.extract::<i64>() {
            return Ok(PyCyc(CycQ8::from_int(n)));
        }
        let parts: Vec<String> = value.extract()?;
        let json = serde_json::to_string(&parts).map_err(value_err)?;
        serde_json::from_str(&json).map(PyCyc).map_err(value_err)
    }

    #[staticmethod]
    fn zeta() -> Self {
        PyCyc(CycQ8::zeta())
    }

    #[staticmethod]
    fn sqrt2() -> Self {
        PyCyc(CycQ8::sqrt2())
    }

    fn conj(&self) -> Self {
        PyCyc(self.0.conj())
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(PyCyc).map_err(value_err)
    }

    fn to_complex(&self) -> (f64, f64) {
        let z = self.0.to_complex();
        (z.re, z.im)
    }

    fn __add__(&self, o: &Self) -> Self {
        PyCyc(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyCyc(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyCyc(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Self {
        PyCyc(-self.0.clone())
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.0 == o.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyc({})", self.0)
    }
}

#[pyclass(name = "HopfAlgebra", module = "hopfcheck_py")]
pub struct PyHopf(pub HopfAlgebra);

#[pymethods]
impl PyHopf {
    /// One of the built-in models: kp, vtilde, vtilde-twist, smash.
    #[staticmethod]
    fn model(id: &str) -> PyResult<Self> {
        let text = checks::export_model(id).map_err(|e| PyKeyError::new_err(e.to_string()))?;
        HopfAlgebra::from_json_str(&text).map(PyHopf).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        HopfAlgebra::from_json_str(text).map(PyHopf).map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn block_sizes(&self) -> Vec<usize> {
        self.0.algebra().block_sizes().to_vec()
    }

    /// Basis labels in canonical order.
    fn basis_labels(&self) -> Vec<String> {
        (0..self.0.dim()).map(|i| self.0.algebra().describe_basis(i)).collect()
    }

    /// Counit values on the basis.
    fn counit(&self) -> Vec<PyCyc> {
        (0..self.0.dim()).map(|i| PyCyc(self.0.epsilon(&self.0.basis(i)))).collect()
    }

    fn verify_axioms(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &verify_hopf_axioms(&self.0))
    }

    fn commutativity(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &commutativity_flags(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("HopfAlgebra(blocks={:?})", self.0.algebra().block_sizes())
    }
}

/// (id, title, anchor) for every check whose id or title contains `filter`.
#[pyfunction]
#[pyo3(signature = (filter=None))]
fn list_checks(filter: Option<&str>) -> Vec<(String, String, String)> {
    checks::list_checks(filter).into_iter().map(|d| (d.id.into(), d.title.into(), d.anchor.into())).collect()
}

/// Run one registered check; returns {id, verdict, elapsed_ms, witness, anchor, as_expected}.
#[pyfunction]
#[pyo3(signature = (id, tau=None, model=None))]
fn run_check(py: Python<'_>, id: &str, tau: Option<&str>, model: Option<String>) -> PyResult<PyObject> {
    let tau = tau.map(parse_rational).transpose().map_err(value_err)?;
    let opts = Options { model: model.map(Into::into), tau };
    let r = checks::run_check(id, &opts).map_err(|e| PyKeyError::new_err(e.to_string()))?;
    let obj = to_py(py, &r)?;
    obj.downcast_bound::<PyDict>(py)?.set_item("as_expected", r.as_expected())?;
    Ok(obj)
}

/// Quadruples of simples where the pentagon fails for (χ_c, τ).
#[pyfunction]
#[pyo3(signature = (tau, literal=false))]
fn pentagon_failures(tau: &str, literal: bool) -> PyResult<Vec<[String; 4]>> {
    let tau = CycQ8::from_rational(parse_rational(tau).map_err(value_err)?);
    let reading = if literal { RhoSRho::Literal } else { RhoSRho::PerSummand };
    let t = build_ty_data(chi_c(), tau).map_err(value_err)?.with_reading(reading);
    Ok(pentagon_check(&t).failing.into_iter().map(|q| q.map(String::from)).collect())
}

/// Result of the phase search on the printed ψ_ρ.
#[pyfunction]
fn repair_psi_rho(py: Python<'_>) -> PyResult<PyObject> {
    let r = sign_repair_search(&printed_module_data()).map_err(value_err)?;
    to_py(py, &serde_json::json!({"solutions": r.solutions.len(), "minimal": r.minimal, "log": r.log}))
}

/// Add every class and function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCyc>()?;
    m.add_class::<PyHopf>()?;
    m.add_function(wrap_pyfunction!(list_checks, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(pentagon_failures, m)?)?;
    m.add_function(wrap_pyfunction!(repair_psi_rho, m)?)?;
    Ok(())
}

#[pymodule]
fn hopfcheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
