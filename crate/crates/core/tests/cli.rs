//! End-to-end runs of the command-line front end.

use std::process::Command;

use confmod::cli::{run, EXIT_CONFIG, EXIT_USAGE, EXIT_VERIFY};

fn run_args(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("confmod").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

const SMALL: [&str; 4] = ["--H", "4,8,32", "--levels", "2"];

#[test]
fn sweep_csv_is_deterministic_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let mut args = vec!["sweep", "--fixture", "f1", "--out", out];
    args.extend(SMALL);
    let (code, first) = run_args(&args);
    assert_eq!(code, 0, "{first}");
    let (_, second) = run_args(&args);
    assert_eq!(first, second);
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("H,m_omega,m_omega_err,gamma"), "{csv}");
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn verify_writes_report_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    // An impossible floor makes the asymptotics claim fail.
    let mut args = vec!["verify", "--fixture", "f1", "--out", out, "--ratio-floor", "1.5"];
    args.extend(SMALL);
    let (code, text) = run_args(&args);
    assert_eq!(code, EXIT_VERIFY, "{text}");
    assert!(text.lines().any(|l| l.starts_with("asymptotics") && l.contains("FAIL")), "{text}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["verdicts"].as_array().unwrap().len(), 6);
    assert!(report["report"]["provenance"]["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn domain_file_flags_override_tables() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/tilted.toml");
    let (code, text) = run_args(&["gamma", "--domain", path]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("0.89257420525"), "{text}");
    let (code, text) = run_args(&["modulus", "--domain", path, "--levels", "0"]);
    assert_eq!(code, EXIT_CONFIG, "{text}");
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(run_args(&["quad", "--rect", "1"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["modulus", "--annulus", "2,1"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "confmod_config = 2\n").unwrap();
    assert_eq!(run_args(&["gamma", "--domain", bad.to_str().unwrap()]).0, EXIT_CONFIG);
}

#[test]
fn binary_honours_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_confmod"))
        .args(["quad", "--rect", "1,0.5", "--json"])
        .env("CONFMOD_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["estimate"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}
