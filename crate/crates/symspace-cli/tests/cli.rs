//! End-to-end runs of the `symspace` binary on the fixture documents.

use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn symspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symspace"))
        .args(args)
        .env_remove("SYMSPACE_TOL")
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn coefficients(doc: &serde_json::Value) -> Vec<f64> {
    let mut out = Vec::new();
    for row in doc["rows"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            out.extend(entry.as_array().unwrap().iter().map(|c| c.as_f64().unwrap()));
        }
    }
    out
}

#[test]
fn base_operator_passes_check() {
    let out = symspace(&["check", "--family", "O11", "--model", "C", "--in", &fixture("o11_c_base.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn lower_half_plane_fails_the_cone_condition() {
    let out =
        symspace(&["check", "--family", "SP2", "--model", "U", "--sign", "1", "--in", &fixture("sp2_u_minus_i.json")]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failures = report["suites"][0]["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f.as_str().unwrap().starts_with("sign * Im z positive")));
}

#[test]
fn lower_half_plane_belongs_to_the_negative_model() {
    let out =
        symspace(&["check", "--family", "SP2", "--model", "U", "--sign", "-1", "--in", &fixture("sp2_u_minus_i.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_documents_exit_with_input_error() {
    let out = symspace(&["check", "--family", "SP2", "--model", "U", "--in", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input error"));
    let missing = symspace(&["check", "--family", "SP2", "--model", "U", "--in", &fixture("absent.json")]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn base_operator_maps_to_the_disk_centre() {
    let out = symspace(&["convert", "--from", "SP2/C", "--to", "SP2/B", "--in", &fixture("sp2_c_base.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(coefficients(&json(&out)).iter().all(|c| c.abs() < 1e-15));
}

#[test]
fn conversion_round_trip_reproduces_the_fixture_bytes() {
    let dir = std::env::temp_dir().join(format!("symspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (mid, back) = (dir.join("u.json"), dir.join("c.json"));
    let input = fixture("sp2_c_base.json");
    let first =
        symspace(&["convert", "--from", "SP2/C", "--to", "SP2/U+", "--in", &input, "--out", mid.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    let second = symspace(&[
        "convert",
        "--from",
        "SP2/U+",
        "--to",
        "SP2/C",
        "--in",
        mid.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(std::fs::read(&input).unwrap(), std::fs::read(&back).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn metric_at_the_base_point() {
    let out =
        symspace(&["metric", "--family", "SP2", "--z", &fixture("sp2_u_i.json"), "--v", &fixture("real_one.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["metric"].as_f64(), Some(1.0));
}

#[test]
fn invariants_of_the_identity() {
    let out = symspace(&["invariants", "--family", "SP2C", "--in", &fixture("sp2c_higgs_identity.json")]);
    assert_eq!(out.status.code(), Some(0));
    let values: Vec<[f64; 2]> = serde_json::from_value(json(&out)["invariants"].clone()).unwrap();
    assert_eq!(values, vec![[-2.0, 0.0], [1.0, 0.0]]);
}

#[test]
fn acting_by_a_non_member_is_a_domain_error() {
    let out = symspace(&[
        "act",
        "--model",
        "O11/C",
        "--g",
        &fixture("scaling_by_two.json"),
        "--in",
        &fixture("o11_c_base.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("NotInGroup"));
}

#[test]
fn tolerance_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_symspace"))
        .args(["check", "--family", "O11", "--model", "C", "--in", &fixture("o11_c_base.json")])
        .env("SYMSPACE_TOL", "1e-3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["suites"][0]["tol"].as_f64(), Some(1e-3));
}

#[test]
fn selftest_reports_are_reproducible() {
    let args = ["selftest", "--seed", "7", "--cases", "2", "--filter", "hkr"];
    let (a, b) = (symspace(&args), symspace(&args));
    assert_eq!(a.status.code(), Some(0));
    let strip = |out: &Output| {
        let report: symspace_cli::report::RunReport = serde_json::from_slice(&out.stdout).unwrap();
        report.without_timing()
    };
    assert_eq!(strip(&a), strip(&b));
}
