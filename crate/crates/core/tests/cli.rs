use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bernint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bernint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = bernint(args);
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {text}\nstderr: {}", String::from_utf8_lossy(&out.stderr)));
    (code, value)
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn coeffs_floor_and_nearest() {
    let (code, r) = report(&["coeffs", "--fn", "monomial(2)", "--n", "2", "--kind", "floor"]);
    assert_eq!(code, 0);
    let rows = r["result"][0]["rows"].as_array().unwrap();
    let scaled: Vec<&str> = rows.iter().map(|r| r["scaled"].as_str().unwrap()).collect();
    let rounded: Vec<&str> = rows.iter().map(|r| r["rounded"].as_str().unwrap()).collect();
    assert_eq!(scaled, ["0/1", "1/2", "1/1"]);
    assert_eq!(rounded, ["0", "0", "1"]);

    let (_, r) = report(&["coeffs", "--fn", "x^2", "--n", "2", "--kind", "nearest", "--tie", "half_up"]);
    let rounded: Vec<&str> = r["result"][0]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["rounded"].as_str().unwrap())
        .collect();
    assert_eq!(rounded, ["0", "1", "1"]);

    let (_, r) = report(&["coeffs", "--fn", "integer_linear(3,2)", "--n", "4", "--kind", "floor"]);
    for (k, row) in r["result"][0]["rows"].as_array().unwrap().iter().enumerate() {
        let expected = format!("{}/4", 3 * k + 8);
        let coeff = row["coeff"].as_str().unwrap();
        let reduced = bernint::exact::parse_rational(coeff).unwrap();
        assert_eq!(reduced, bernint::exact::parse_rational(&expected).unwrap());
        assert!(row["scaled_error"].is_null());
    }
}

#[test]
fn rate_of_square() {
    let (code, r) = report(&["rate", "--fn", "monomial(2)", "--n-min", "16", "--n-max", "512"]);
    assert_eq!(code, 0);
    let alpha = num(&r["result"]["rate"]["exponent"]);
    assert!((0.98..=1.02).contains(&alpha), "alpha = {alpha}");
    assert_eq!(r["config"]["n"].as_array().unwrap().len(), 6);
}

#[test]
fn saturation_trivial_class() {
    let (code, r) = report(&["saturation", "--fn", "integer_linear(2,1)", "--kind", "floor", "--strict"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "trivial_class");
}

#[test]
fn verify_reports_failing_hypothesis() {
    let out = bernint(&["verify", "--fn", "monomial(3)", "--s", "2", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["passed"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("f''(1) = 6"));
    // Without --strict the report is the same but the status is 0.
    assert_eq!(bernint(&["verify", "--fn", "monomial(3)", "--s", "2"]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(bernint(&["eval", "--fn", "nothing"]).status.code(), Some(2));
    assert_eq!(bernint(&["error", "--grid", "3"]).status.code(), Some(2));
    assert_eq!(bernint(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bernint(&["error", "--fn", "abs_shift", "--s", "1"]).status.code(), Some(2));
    assert_eq!(bernint(&["--help"]).status.code(), Some(0));
    let out = bernint(&["saturation", "--fn", "holder_interior(1/2,0,0)", "--n", "4,8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"fn": "monomial(3)", "kind": "floor", "n": [4, 8], "grid": 65}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let (_, r) = report(&["error", "--config", cfg, "--grid", "129"]);
    assert_eq!(r["config"]["fn"], "monomial(3)");
    assert_eq!(r["config"]["kind"], "floor");
    assert_eq!(r["config"]["grid"], 129);
    assert_eq!(r["config"]["n"], serde_json::json!([4, 8]));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"fn": "monomial(3)", "colour": "red"}"#).unwrap();
    let out = bernint(&["error", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

fn run_to(path: &Path, args: &[&str]) -> Vec<u8> {
    let mut all = args.to_vec();
    all.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(bernint(&all).status.code(), Some(0), "{args:?}");
    std::fs::read(path).unwrap()
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.out");
    let commands: &[&[&str]] = &[
        &["list-fns"],
        &["coeffs", "--fn", "holder_interior(1/2)", "--n", "7", "--kind", "nearest"],
        &["eval", "--fn", "monomial(3)", "--x", "1/3,0.25"],
        &["error", "--fn", "monomial(2)", "--kind", "nearest", "--n", "8,16,32"],
        &["rate", "--fn", "monomial(2)", "--format", "csv"],
        &["modulus", "--fn", "holder_interior(3/2)", "--s", "1"],
        &["saturation", "--fn", "monomial(2)", "--kind", "floor", "--n-max", "128"],
        &["converse", "--fn", "monomial(2)", "--kind", "nearest", "--s", "1", "--n-max", "256"],
        &["verify", "--fn", "poly_boundary_flat(2)", "--s", "2", "--n-max", "64"],
        &["voronovskaya", "--fn", "monomial(3)", "--n-max", "128", "--format", "csv"],
    ];
    for args in commands {
        let first = run_to(&path, args);
        let second = run_to(&path, args);
        assert!(!first.is_empty());
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn csv_rate_has_plot_columns() {
    let out = bernint(&["rate", "--fn", "monomial(2)", "--format", "csv", "--n", "8,16,32,64"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "n,error,log_n,log_error,fitted_log_error,role");
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn list_fns_covers_catalog() {
    let (_, r) = report(&["list-fns"]);
    let names: Vec<&str> = r["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"monomial(2)"));
    assert!(names.contains(&"abs_shift"));
    assert_eq!(r["result"]["families"].as_array().unwrap().len(), 5);
}
