use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cone-anomaly"));
    c.env_remove("CONE_ANOMALY_DIGITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn center(v: &Value) -> f64 {
    v["center"].as_str().unwrap().parse().unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn sphere_p1_cancels() {
    let out = run(&["--digits", "40", "sphere", "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["cancels"], true);
    assert!((center(&v["report"]["comb_term"]) + 0.5 * (4.0 * std::f64::consts::PI).ln()).abs() < 1e-14);
}

#[test]
fn sphere_identities_and_oracle() {
    let out = run(&["--digits", "30", "sphere", "--p", "3", "--identities", "--oracle-s", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &v["report"];
    assert_eq!(r["identities"]["alpha_weighted_top_sum"], "3");
    assert_eq!(r["reduction"]["agrees"], true);
    assert_eq!(r["reduction"]["agrees_published"], false);
}

#[test]
fn sphere_oracle_rejects_small_s() {
    let out = run(&["sphere", "--p", "2", "--oracle-s", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nh_derivative_at_zero() {
    let out = run(&["--digits", "40", "zeta", "nh", "--s", "0", "--deriv"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for r in v["report"]["routes"].as_array().unwrap() {
        assert!((center(&r["value"]) + 2.219_768_064_782_904).abs() < 1e-14);
    }
}

#[test]
fn double_routes_agree_left_of_one() {
    let out = run(&["--digits", "30", "zeta", "double", "--s", "0.75"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["routes"].as_array().unwrap().len(), 2);
    assert!((center(&v["report"]["routes"][0]["value"]) + 5.242_205_002_657_027).abs() < 1e-13);
}

#[test]
fn exit_code_follows_failures() {
    let out = run(&["--digits", "30", "torus"]);
    let v = json(&out);
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(out.status.code() == Some(0), failures.is_empty());
    assert_eq!(v["passed"], failures.is_empty());
    // the rigorous total is positive, so the negativity verdict fails
    assert!((center(&v["report"]["total"]) - 0.289_857_054_913_791_4).abs() < 1e-14);
    assert!(failures.iter().any(|f| f == "total_negative"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--digits", "10", "constants"]).status.code(), Some(2));
    assert_eq!(run(&["--digits", "501", "constants"]).status.code(), Some(2));
    assert_eq!(run(&["sphere", "--p", "0"]).status.code(), Some(2));
    assert_eq!(run(&["sphere", "--p", "9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["zeta", "nh", "--s", "1", "--deriv"]).status.code(), Some(2));
    assert_eq!(run(&["--j-cutoff", "0", "constants"]).status.code(), Some(2));
}

#[test]
fn digits_from_environment() {
    let out = bin().env("CONE_ANOMALY_DIGITS", "25").arg("constants").output().unwrap();
    assert_eq!(json(&out)["config"]["digits"], 25);
}

#[test]
fn text_format() {
    let out = run(&["--digits", "30", "--format", "text", "sphere", "--p", "2"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("comb_term: -1.63514451236 ±"), "{s}");
    assert!(s.ends_with("passed: true\n"));
}

#[test]
fn byte_identical_reruns() {
    let args = ["--digits", "30", "certify-bounds"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn certificates_name_their_reading() {
    let out = run(&["--digits", "30", "certify-bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let certs = v["report"]["certificates"].as_array().unwrap();
    let verdict = |claim: &str| {
        certs.iter().find(|c| c["claim"] == claim).unwrap()["verdict"].as_str().unwrap().to_string()
    };
    assert_eq!(verdict("prop_3_1"), "holds_as_stated");
    assert_eq!(verdict("prop_3_2"), "holds_factor_corrected");
    assert_eq!(verdict("prop_3_3"), "holds_factor_corrected");
    assert_eq!(verdict("residue_sandwich"), "holds_factor_corrected");
}

fn check_golden(file: &str, args: &[&str], code: i32) {
    let path = golden(file);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--snapshot", p]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(out.stdout, std::fs::read(&path).unwrap());
}

#[test]
fn golden_sphere() {
    check_golden("sphere_p2_d40.json", &["--digits", "40", "sphere", "--p", "2", "--identities", "--oracle-s", "6"], 0);
}

#[test]
fn golden_constants() {
    check_golden("constants_d40.json", &["--digits", "40", "constants"], 0);
}

#[test]
fn golden_certify_bounds() {
    check_golden("certify_bounds_d40.json", &["--digits", "40", "certify-bounds"], 0);
}

#[test]
fn golden_torus() {
    check_golden("torus_d40.json", &["--digits", "40", "torus"], 1);
}

#[test]
fn snapshot_mismatch_fails() {
    let path = std::env::temp_dir().join(format!("cone-anomaly-snap-{}.json", std::process::id()));
    std::fs::write(&path, "{}\n").unwrap();
    let out = run(&["--digits", "20", "constants", "--snapshot", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
}
