use std::process::{Command, Output};

use serde_json::Value;

fn dtwo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtwo")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn audit_of_s3_a3_is_consistent() {
    let out = dtwo(&["audit", "s3-a3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["main_theorem_consistent"], true);
    assert_eq!(v["lhs"], true);
    assert_eq!(v["rhs"], true);
}

#[test]
fn transposition_subgroup_is_not_depth_two() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/s3_transposition.json");
    let out = dtwo(&["d2", "--input", path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["right_d2"], false);
    assert_eq!(v["left_d2"], false);
    let audit = json_of(&dtwo(&["--command", "audit", "--input", path, "--json"]));
    assert_eq!(audit["lhs"], false);
    assert_eq!(audit["rhs"], false);
}

#[test]
fn generated_example_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sqrt2.json");
    let file = file.to_str().unwrap();
    let out = dtwo(&["gen-example", "field-sqrt2", "--output", file]);
    assert_eq!(out.status.code(), Some(0));
    let from_file = json_of(&dtwo(&["analyze", file, "--json"]));
    let from_name = json_of(&dtwo(&["analyze", "field-sqrt2", "--json"]));
    assert_eq!(from_file, from_name);
    assert_eq!(from_file["dim_T"], 4);
}

#[test]
fn field_override_changes_the_field() {
    let v = json_of(&dtwo(&["analyze", "s3-a3", "--field", "Fp:5", "--json"]));
    assert_eq!(v["field"], "Fp:5");
    assert_eq!(v["right_d2"], true);
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(dtwo(&["audit", "no-such-thing"]).status.code(), Some(1));
    assert_eq!(dtwo(&["audit", "{\"kind\":\"group\""]).status.code(), Some(1));
    assert_eq!(dtwo(&["audit"]).status.code(), Some(1));
    assert_eq!(dtwo(&["frobnicate", "s3-a3"]).status.code(), Some(1));
    assert_eq!(dtwo(&["audit", "s3-a3", "--field", "Fp:4"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["analyze", "bialgebroid", "galois", "audit"] {
        let a = dtwo(&[cmd, "s3-a3"]);
        let b = dtwo(&[cmd, "s3-a3"]);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn text_output_uses_dotted_keys() {
    let out = dtwo(&["bialgebroid", "field-sqrt2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("axioms.coassociativity.pass: true"), "{text}");
    assert!(text.contains("dim_T: 4"));
}
