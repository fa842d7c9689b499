use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qportrait"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

fn export(dir: &Path, name: &str) -> PathBuf {
    let out = run(&["export-state", name]);
    assert!(out.status.success());
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn bell_tomogram_along_z() {
    let dir = TempDir::new().unwrap();
    let state = export(dir.path(), "bell");
    let v = json(&run(&["tomogram", "--state", state.to_str().unwrap()]));
    assert!(close(&floats(&v["probabilities"]), &[0.5, 0.0, 0.0, 0.5], 1e-15));
}

#[test]
fn two_qutrit_tomogram_along_z() {
    let dir = TempDir::new().unwrap();
    let state = export(dir.path(), "two-qutrit");
    let v = json(&run(&["tomogram", "--state", state.to_str().unwrap()]));
    let third = 1.0 / 3.0;
    let expected = [third, 0.0, 0.0, 0.0, third, 0.0, 0.0, 0.0, third];
    assert!(close(&floats(&v["probabilities"]), &expected, 1e-15));
}

#[test]
fn qubit_qutrit_portrait_along_z() {
    let dir = TempDir::new().unwrap();
    let state = export(dir.path(), "qubit-qutrit");
    let v = json(&run(&["portrait", "--state", state.to_str().unwrap()]));
    assert!(close(&floats(&v["probabilities"]), &[0.5, 0.0, 0.0, 0.5], 1e-15));
}

#[test]
fn chsh_in_degrees_hits_tsirelson() {
    let dir = TempDir::new().unwrap();
    let state = export(dir.path(), "bell");
    let out = run(&[
        "chsh", "--state", state.to_str().unwrap(), "--degrees",
        "--a", "90,0", "--b", "90,45", "--c", "90,-45", "--d", "90,-90",
    ]);
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["verdict"], "entanglement-witnessed");
}

#[test]
fn demo_bell_reports_fixed_and_searched_values() {
    let v = json(&run(&["demo", "bell"]));
    let target = 2.0 * 2f64.sqrt();
    assert!((v["fixed_angles"]["value"].as_f64().unwrap() - target).abs() < 1e-9);
    assert!((v["search"]["best_value"].as_f64().unwrap() - target).abs() < 1e-4);
}

#[test]
fn maximize_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let state = export(dir.path(), "qubit-qutrit");
    let args = ["maximize", "--state", state.to_str().unwrap(), "--seed", "3", "--grid", "6"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["best_value"].as_f64().unwrap() <= 5f64.sqrt() + 1e-12);
}

#[test]
fn semigroup_check_on_product_state() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("up.json");
    let mut entries = vec![vec![[0.0, 0.0]; 4]; 4];
    entries[0][0] = [1.0, 0.0];
    std::fs::write(&path, serde_json::json!({"dims": [2, 2], "entries": entries}).to_string()).unwrap();
    let v = json(&run(&["semigroup-check", "--state", path.to_str().unwrap(), "--count", "3"]));
    assert_eq!(v["products"].as_array().unwrap().len(), 9);
    assert!(v["max_value"].as_f64().unwrap() <= 2.0 + 1e-9);
}

#[test]
fn exported_states_round_trip() {
    let dir = TempDir::new().unwrap();
    for name in ["bell", "qubit-qutrit", "two-qutrit"] {
        let state = export(dir.path(), name);
        let parsed: Value = serde_json::from_slice(&std::fs::read(&state).unwrap()).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
        assert_eq!(parsed, again);
        // the exported file is accepted by every state-consuming command
        assert!(run(&["tomogram", "--state", state.to_str().unwrap()]).status.success());
    }
}

#[test]
fn csv_goes_to_a_file_and_stdout_stays_json() {
    let dir = TempDir::new().unwrap();
    let state = export(dir.path(), "bell");
    let csv = dir.path().join("out.csv");
    let out = run(&["tomogram", "--state", state.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    json(&out);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m1,m2,probability"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn non_positive_state_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("neg.json");
    let mut entries = vec![vec![[0.0, 0.0]; 4]; 4];
    entries[0][0] = [1.5, 0.0];
    entries[3][3] = [-0.5, 0.0];
    std::fs::write(&path, serde_json::json!({"dims": [2, 2], "entries": entries}).to_string()).unwrap();
    let out = run(&["tomogram", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("eigenvalue below tolerance"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "nope").unwrap();
    assert_eq!(run(&["tomogram", "--state", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["demo", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["chsh", "--state", bad.to_str().unwrap(), "--a", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let state = export(dir.path(), "bell");
    assert_eq!(run(&["maximize", "--state", state.to_str().unwrap(), "--grid", "1"]).status.code(), Some(3));
}
