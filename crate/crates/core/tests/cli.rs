use std::process::Command;

use serde_json::Value;
use sympeaks::cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn call(args: &str) -> Outcome {
    run(std::iter::once("sympeaks").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = call(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn is_rational(v: &Value) -> bool {
    ["num", "den", "decimal"].iter().all(|k| v[k].is_string())
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!((EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE), (0, 1, 2));
}

#[test]
fn closed_form_at_five() {
    let v = json("closed-form --which hsp --n 5");
    assert_eq!(v["rows"][0]["value"], "4");
    assert_eq!(v["rows"][0]["integral"], true);
    assert!(is_rational(&v["rows"][0]["re"]));
    assert_eq!(v["checks"][0]["status"], "pass");
}

#[test]
fn table_totals_row() {
    let out = call("table --max-n 8 --format csv");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("n,k,count,sp,sv,hsp,dsv\n"));
    assert!(out.stdout.lines().any(|l| l == "8,total,128,51,15,84,17"));
}

#[test]
fn enumerate_csv_keeps_parts_in_one_field() {
    let out = call("enumerate --n 4 --format csv");
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("parts,n,k,sp,sv,hsp,dsv"));
    assert_eq!(lines.next(), Some("1 1 1 1,4,4,0,0,0,0"));
    assert!(out.stdout.lines().any(|l| l == "1 2 1,4,3,1,0,1,0"));
    assert_eq!(out.stdout.lines().count(), 9);
}

#[test]
fn enumerate_with_fixed_parts() {
    let v = json("enumerate --n 8 --k 5");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 35);
    assert!(rows.iter().all(|r| r["k"] == 5));
}

#[test]
fn decimal_and_fraction_probabilities_match() {
    let a = call("geom expect --stat hsp --p 0.5 --n 12");
    let b = call("geom expect --stat hsp --p 1/2 --n 12");
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert!(is_rational(&v["rows"][0]["value"]));
    assert_eq!(v["params"]["p"], "1/2");
}

#[test]
fn expectation_anchor() {
    let v = json("geom expect --stat sp --p 1/2 --n 10");
    assert_eq!(v["rows"][0]["value"]["num"], "8");
    assert_eq!(v["rows"][0]["value"]["den"], "7");
}

#[test]
fn output_is_reproducible() {
    for args in [
        "geom simulate --stat dsv --p 2/3 --n 30 --trials 5000 --seed 11",
        "gf --which hsp-nk --max-n 10",
        "formula --which sp-count --max-n 9",
    ] {
        assert_eq!(call(args).stdout, call(args).stdout, "{args}");
    }
}

#[test]
fn usage_errors() {
    for args in [
        "bogus",
        "enumerate",
        "formula --which sp-count --n 5 --k 3",
        "geom variance --stat dsv --p 1/2 --n 5",
        "geom expect --stat sp --p 1.5 --n 5",
        "geom expect --stat sp --p 0 --n 5",
        "geom expect --stat sp --p x --n 5",
        "enumerate --n 4 --format xml",
    ] {
        let out = call(args);
        assert_eq!(out.code, EXIT_USAGE, "{args}");
        assert!(out.stdout.is_empty(), "{args}");
        assert!(!out.stderr.is_empty(), "{args}");
    }
}

#[test]
fn help_and_version_succeed() {
    for args in ["--help", "--version", "geom --help"] {
        let out = call(args);
        assert_eq!(out.code, EXIT_OK, "{args}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_sympeaks");
    let ok = Command::new(bin).args(["closed-form", "--which", "dsv", "--n", "8"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["rows"][0]["value"], "17");
    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn quick_verify_passes() {
    let v = json("verify --max-n 8");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().any(|c| c["status"] == "finding"));
}
