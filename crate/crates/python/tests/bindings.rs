use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(f: F) {
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let m = PyModule::new_bound(py, "hopfcheck_py").unwrap();
        hopfcheck_py::register(&m).unwrap();
        f(py, &m);
    });
}

#[test]
fn cyc_arithmetic_from_python() {
    with_module(|py, m| {
        let locals = PyDict::new_bound(py);
        locals.set_item("hc", m).unwrap();
        py.run_bound(
            "z = hc.Cyc.zeta()\nassert z*z*z*z == hc.Cyc(-1)\nassert (hc.Cyc('1/3') * hc.Cyc(3)) == hc.Cyc(1)",
            None,
            Some(&locals),
        )
        .unwrap();
    });
}

#[test]
fn model_roundtrip_and_checks() {
    with_module(|py, m| {
        let locals = PyDict::new_bound(py);
        locals.set_item("hc", m).unwrap();
        py.run_bound(
            r#"
h = hc.HopfAlgebra.model("vtilde")
assert h.block_sizes == [1] * 8
assert hc.HopfAlgebra.from_json(h.to_json()).to_json() == h.to_json()
r = hc.run_check("kp.one-dim")
assert r["verdict"] == "pass"
assert len(hc.list_checks("zzz")) == 0
"#,
            None,
            Some(&locals),
        )
        .unwrap();
    });
}

#[test]
fn unknown_model_raises_key_error() {
    with_module(|py, m| {
        let err = m.getattr("HopfAlgebra").unwrap().call_method1("model", ("nope",)).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyKeyError>(py));
    });
}
