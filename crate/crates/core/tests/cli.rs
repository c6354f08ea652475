use std::process::{Command, Output};

fn hopfcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcheck")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn unknown_check_is_a_usage_error() {
    let o = hopfcheck(&["verify", "--check", "nope.nothing"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check"));
}

#[test]
fn list_filters() {
    let o = hopfcheck(&["list", "modcat"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("modcat.")).count(), 3);

    let all = hopfcheck(&["list"]);
    assert!(stdout(&all).lines().count() - 1 >= 14);

    let none = hopfcheck(&["list", "zzz"]);
    assert!(none.status.success());
    assert_eq!(stdout(&none).lines().count(), 1);
}

#[test]
fn negative_control_exits_zero() {
    let o = hopfcheck(&["verify", "--check", "ty.pentagon-negative", "--tau", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn pentagon_with_wrong_tau_is_unexpected() {
    let o = hopfcheck(&["verify", "--check", "ty.pentagon", "--tau", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_tau_is_a_usage_error() {
    assert_eq!(hopfcheck(&["verify", "--check", "ty.pentagon", "--tau", "x/y"]).status.code(), Some(2));
}

#[test]
fn json_report_schema() {
    let o = hopfcheck(&["verify", "--check", "twist.iso-phi", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["anchor", "elapsed_ms", "id", "verdict", "witness"]);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn export_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["kp", "vtilde", "vtilde-twist", "smash"] {
        let a = dir.path().join(format!("{id}-a.json"));
        let b = dir.path().join(format!("{id}-b.json"));
        assert!(hopfcheck(&["export", id, a.to_str().unwrap()]).status.success());
        let text = std::fs::read_to_string(&a).unwrap();
        let h = hopfcheck::hopf::HopfAlgebra::from_json_str(&text).unwrap();
        assert!(hopfcheck::hopf::verify_hopf_axioms(&h).passed());
        std::fs::write(&b, h.to_json_string()).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("vtilde-a.json")).unwrap()).unwrap();
    assert_eq!(v["block_sizes"], serde_json::json!([1, 1, 1, 1, 1, 1, 1, 1]));
}

#[test]
fn export_to_unwritable_path_fails() {
    let o = hopfcheck(&["export", "kp", "/nonexistent-dir/kp.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_unknown_model_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = hopfcheck(&["export", "nope", dir.path().join("x.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_file_option() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("vtilde.json");
    std::fs::write(&good, serde_json::to_string_pretty(&hopfcheck::checks::builtin_model_file()).unwrap()).unwrap();
    let o = hopfcheck(&["verify", "--check", "model.twist", "--model", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"generators\": [],\n  \"colour\": 1\n}\n").unwrap();
    let o = hopfcheck(&["verify", "--check", "model.twist", "--model", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("line 3") && out.contains("colour"), "{out}");
}
