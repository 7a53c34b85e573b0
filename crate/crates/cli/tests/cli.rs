use std::process::Command;

use serde_json::Value;

fn alexmod(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_alexmod")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

#[test]
fn validate_torus() {
    let (code, r) = alexmod(&["validate", "builtin:torus"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["ok"], Value::Bool(true));
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn fg_knot_5_2() {
    let (code, r) = alexmod(&["fg", "builtin:knot_5_2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "NOT_FG");
    let refutation = &r["result"]["report"]["decider"]["refutation"];
    assert_eq!(refutation["strong_basis_leading_coefficients"][0], "2");
}

#[test]
fn fg_torus_with_search_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, _) = alexmod(&["fg", "builtin:torus", "--find-generic", "5", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["result"]["verdict"], "FG_OVER_Z");
    assert!(r["rho_search"]["rho"].is_array());
}

#[test]
fn parse_error_has_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"variables\": 1,\n  \"coefficients\": \"Z\",\n  \"degrees\": [0, 1],\n  \"ranks\": [1, 1],\n  \"boundary\": {\"1\": [[\"t -* 1\"]]}\n}\n").unwrap();
    let (code, r) = alexmod(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "parse");
    assert_eq!(r["error"]["line"], 6);
}

#[test]
fn usage_errors() {
    assert_eq!(alexmod(&["fg"]).0, 1);
    assert_eq!(alexmod(&["fg", "builtin:torus", "--window", "2:0"]).0, 1);
    assert_eq!(alexmod(&["fg", "builtin:torus", "--rho", "1,0"]).0, 1);
    assert_eq!(alexmod(&["bogus", "builtin:torus"]).0, 1);
}

#[test]
fn crosscheck_seed_42() {
    let (code, r) = alexmod(&["crosscheck", "--seed", "42", "--count", "100", "--threads", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["complexes"], 100);
    assert_eq!(r["result"]["agreement"], 1.0);
}

#[test]
fn deterministic_reports() {
    let args = ["jump-locus-sample", "builtin:torus_complex", "--char-prime", "3", "--ext-degrees", "2", "--count", "5", "--seed", "11"];
    let a = Command::new(env!("CARGO_BIN_EXE_alexmod")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_alexmod")).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
