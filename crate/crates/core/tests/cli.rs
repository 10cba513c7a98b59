//! The compiled binary, driven through its command line.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn hyperdmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdmod")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn quiver_paths_d1_to_g6() {
    let out = hyperdmod(&["quiver", "paths", "--from", "d1", "--to", "g6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dim"], json!(1));
    assert_eq!(v["representatives"][2].as_array().unwrap().len(), 1);
}

#[test]
fn quiver_check_passes() {
    let out = hyperdmod(&["quiver", "check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out).as_array().unwrap().iter().all(|c| c["passed"] == json!(true)));
}

#[test]
fn classify_tensor_files() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, "[[[0,0],[0,0]],[[0,0],[0,0]]]").unwrap();
    let out = hyperdmod(&["classify", "--tensor", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"orbit": "O0"}));

    let generic = dir.path().join("generic.json");
    std::fs::write(&generic, "[[[1,0],[0,0]],[[0,0],[0,1]]]").unwrap();
    let out = hyperdmod(&["classify", "--tensor", generic.to_str().unwrap()]);
    assert_eq!(stdout_json(&out), json!({"orbit": "O6"}));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[1,2,3]").unwrap();
    assert_eq!(hyperdmod(&["classify", "--tensor", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(hyperdmod(&["classify", "--tensor", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn iterated_local_cohomology() {
    let out = hyperdmod(&["lc", "--module", "S", "--supports", "O1,O0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"[4,4]": ["E"]}));
    let out = hyperdmod(&["lc", "--module", "S", "--supports", "O5,O1"]);
    assert_eq!(stdout_json(&out), json!({"[1,3]": ["D1"]}));
    let out = hyperdmod(&["lc", "--module", "S", "--supports", "O9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("O9"));
}

#[test]
fn multiplicity_queries() {
    let out = hyperdmod(&["simple-mult", "--simple", "D212", "--weight", "[[2,2],[3,1],[2,2]]"]);
    assert_eq!(stdout_json(&out), json!(1));
    let out = hyperdmod(&["mult", "--module", "S_h", "--weight", "[[-4,-4],[-4,-4],[-4,-4]]"]);
    assert_eq!(stdout_json(&out), json!(1));
    let out = hyperdmod(&["mult", "--module", "S_h", "--weight", "[[-5,-5],[-5,-5],[-5,-5]]"]);
    assert_eq!(stdout_json(&out), json!(0));
    let out = hyperdmod(&["--json", "euler", "--weight", "[[1,1],[1,1],[1,1]]"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains('\n'));
    assert_eq!(stdout_json(&out), json!(0));
}

#[test]
fn exit_codes() {
    assert_eq!(hyperdmod(&[]).status.code(), Some(2));
    assert_eq!(hyperdmod(&["dump", "--module", "S"]).status.code(), Some(2));
    assert_eq!(hyperdmod(&["dump", "--module", "S", "--box", "x"]).status.code(), Some(2));
    assert_eq!(hyperdmod(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hyperdmod(&["simple-mult", "--simple", "E", "--weight", "[[0,1],[0,0],[0,0]]"]).status.code(), Some(1));
    assert_eq!(hyperdmod(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports_failures_with_exit_code() {
    let out = hyperdmod(&["verify", "local-cohomology"]);
    let v = stdout_json(&out);
    let passed = v["passed"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if passed { 0 } else { 1 }));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1);
    let out = hyperdmod(&["verify", "geometry", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["seed"], json!(7));
}
