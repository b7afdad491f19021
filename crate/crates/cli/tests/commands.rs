use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = sasaki(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), v)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn coincidence_on_flat_space_passes() {
    let (code, r) = json(&["check", "--suite", "coincidence", "--catalog", "r2n1"]);
    assert_eq!(code, 0);
    assert_eq!(r["exit"], 0);
    let c = check(&r, "∇ = *∇ iff L, Q integrable and Sasakian (L, Q flat, ∇g = 0)");
    assert_eq!(c["verdict"], "pass");
    assert_eq!(c["hypothesis_flags"]["∇=*∇"], true);
}

#[test]
fn tanno_clause_iii_fails_on_the_sphere() {
    let (code, r) = json(&["check", "--suite", "tanno", "--catalog", "s3", "--connection", "bl"]);
    assert_eq!(code, 1);
    let c = check(&r, "(iii) T(ξ,φV) = -φT(ξ,V)");
    assert_eq!(c["verdict"], "fail");
    assert!(c["witness"].as_str().unwrap().contains("T(ξ,φY) = 2*Y vs -φT(ξ,Y) = -2*Y"));
}

#[test]
fn sphere_coincidence_report_carries_flatness_flag() {
    let (code, r) = json(&["check", "--suite", "coincidence", "--catalog", "s3"]);
    assert_eq!(code, 0);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["hypothesis_flags"]["flat(L)"], false);
    }
}

#[test]
fn malformed_manifest_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"schema_version": 1, "name": "bad", "chart": {"coords": "x"}}"#).unwrap();
    let out = sasaki(&["connection", "--connection", "lc", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("chart.coords"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(sasaki(&["validate", "--catalog", "nope"]).status.code(), Some(2));
    assert_eq!(sasaki(&["validate"]).status.code(), Some(2));
    assert_eq!(sasaki(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sasaki(&["check", "--suite", "tanno", "--catalog", "r2n"]).status.code(), Some(2));
    assert_eq!(sasaki(&["check", "--suite", "appendix", "--catalog", "s3"]).status.code(), Some(2));
    assert_eq!(sasaki(&["validate", "--catalog", "r2n1", "--n", "0"]).status.code(), Some(2));
    let (code, r) = json(&["validate", "--catalog", "nope"]);
    assert_eq!(code, 2);
    assert_eq!(r["exit"], 2);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["check", "--catalog", "kappa-mu", "--format", "json"];
    assert_eq!(sasaki(&args).stdout, sasaki(&args).stdout);
    let text = ["compare", "--catalog", "s3", "--connection", "bl", "--with", "tw"];
    assert_eq!(sasaki(&text).stdout, sasaki(&text).stdout);
}

#[test]
fn witnesses_are_truncated_with_a_marker() {
    let (code, r) = json(&["check", "--suite", "tanno", "--catalog", "s3", "--connection", "bl", "--max-witness-len", "12"]);
    assert_eq!(code, 1);
    let c = check(&r, "(iii) T(ξ,φV) = -φT(ξ,V)");
    assert_eq!(c["truncated"], true);
    assert!(c["witness"].as_str().unwrap().ends_with("[truncated]"));
}

#[test]
fn connection_and_compare_tables() {
    let (code, r) = json(&["connection", "--connection", "bl", "--catalog", "s3"]);
    assert_eq!(code, 0);
    assert!(r.get("table").is_none(), "bi-Legendrian coefficients vanish on the sphere frame");

    let (code, r) = json(&["compare", "--catalog", "r2n1", "--connection", "bl", "--with", "tw"]);
    assert_eq!(code, 0);
    assert!(r.get("table").is_none());

    let (code, r) = json(&["compare", "--catalog", "s3", "--connection", "bl", "--with", "tw"]);
    assert_eq!(code, 1);
    assert!(!r["table"].as_array().unwrap().is_empty());
}

#[test]
fn classify_reports_pang_forms() {
    let (code, r) = json(&["classify", "--catalog", "kappa-mu"]);
    assert_eq!(code, 0);
    let rows = r["table"].as_array().unwrap();
    let get = |k: &str| rows.iter().find(|row| row["key"] == k).unwrap()["value"].clone();
    assert_eq!(get("L"), "flat");
    assert_eq!(get("Q"), "non-degenerate");
    assert_eq!(get("Π(Q)"), "[[-4, 0, 0], [0, -4, 0], [0, 0, -4]]");
}

#[test]
fn validate_echoes_expectation_origins() {
    let (code, r) = json(&["validate", "--catalog", "darboux-verbatim"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "dη(V,W) = g(V,φW)")["verdict"], "fail");
    let e = check(&r, "expected: valid is false");
    assert_eq!(e["verdict"], "pass");
    assert_eq!(e["origin"], "computed");
}

#[test]
fn export_writes_a_manifest_that_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kappa.json");
    let out = sasaki(&["export", "--catalog", "kappa-mu", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&path).exists());
    let (code, r) = json(&["check", "--suite", "tilde-theorem", "--manifest", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["subject"]["source"], "manifest");
    assert_eq!(check(&r, "K-contact iff ∇̃g = 0")["verdict"], "pass");
}
