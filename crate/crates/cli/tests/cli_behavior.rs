//! Exit-code and stream contracts of the binary: data on stdout,
//! diagnostics on stderr, 0 on success, 1 on verification failure, 2 on
//! schema or validation problems.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn instance_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../instances/{name}.json"))
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_kreg"))
        .args(args)
        .output()
        .expect("run binary")
}

fn temp_instance(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("kreg-test-{name}.json"));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn success_is_exit_zero_with_json_on_stdout() {
    let p = instance_path("wonderful_a1");
    let out = run(&["verify-all", "--instance", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["ok"], serde_json::json!(true));
}

#[test]
fn malformed_json_is_exit_two() {
    let p = temp_instance("malformed", "{ this is not json");
    let out = run(&["weyl", "--instance", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_eq!(v["error"], serde_json::json!("validation"));
}

#[test]
fn missing_instance_flag_is_exit_two() {
    let out = run(&["weyl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_generic_direction_is_exit_two() {
    let p = temp_instance(
        "nongeneric",
        r#"{"root_system": {"type": "A1xA1"},
            "fan": {"rays": [[1,0],[1,1],[0,1]], "maximal_cones": [[0,1],[1,2]]},
            "psi": [0,1,0], "bb_direction": [1,1]}"#,
    );
    let out = run(&["toric-k", "--instance", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_verification_is_exit_one() {
    // valid fan data, but the constant psi is not ample
    let p = temp_instance(
        "notample",
        r#"{"root_system": {"type": "A1xA1"},
            "fan": {"rays": [[1,0],[1,1],[0,1]], "maximal_cones": [[0,1],[1,2]]},
            "psi": [0,0,0], "bb_direction": [1,2]}"#,
    );
    let out = run(&["fan", "--instance", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["ample"]["ample"], serde_json::json!(false));
}

#[test]
fn kring_rejects_torus_instances() {
    let p = instance_path("p1_torus");
    let out = run(&["kring", "--instance", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn instance_parallel_option_is_honored_and_immaterial() {
    let p = temp_instance(
        "paropt",
        r#"{"root_system": {"type": "A1xA1"},
            "fan": {"rays": [[1,0],[1,1],[0,1]], "maximal_cones": [[0,1],[1,2]]},
            "psi": [0,1,0], "bb_direction": [1,2],
            "options": {"parallel": 3}}"#,
    );
    let with_option = run(&["verify-all", "--instance", p.to_str().unwrap()]);
    assert_eq!(with_option.status.code(), Some(0));
    let q = instance_path("quadrant_a1xa1");
    let plain = run(&["verify-all", "--instance", q.to_str().unwrap()]);
    assert_eq!(with_option.stdout, plain.stdout);
}
