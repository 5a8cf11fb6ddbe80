use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

const DEG2: &str = r#"{"lambda": [2, -2], "mu": [1, -1], "name": "deg2"}"#;
const DEG4: &str = r#"{"lambda": [5, 1, -1, -5], "mu": [4, 2, -2, -4]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_interlace-majorize"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_path(args: &[&str], path: &Path) -> Output {
    bin().args(args).arg(path).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn check_degree_two() {
    let dir = TempDir::new().unwrap();
    let out = run_path(&["check"], &write(&dir, "a.json", DEG2));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["interlace"]["common_interlacer"], true);
    assert_eq!(v["majorization"]["holds"], true);
    assert_eq!(v["necessary_condition"]["kind"], "NecessaryConditionPassed");
    assert_eq!(v["strong_majorization"]["kind"], "StrongMajorization");
    assert_eq!(v["instance"]["name"], "deg2");
}

#[test]
fn check_degree_four_from_stdin() {
    let mut child = bin().args(["check", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(DEG4.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["majorization"]["holds"], true);
    assert_eq!(v["strong_majorization"]["kind"], "NotStrongMajorization");
    assert_eq!(v["strong_majorization"]["witness_k"], 2);
    assert_eq!(v["strong_majorization"]["value"], "-3/20");
}

#[test]
fn check_input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("len.json", r#"{"lambda": [1], "mu": [1, 2]}"#),
        ("float.json", r#"{"lambda": [1.5], "mu": [1]}"#),
        ("junk.json", "not json"),
    ] {
        let out = run_path(&["check"], &write(&dir, name, text));
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    assert_eq!(run(&["check", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn check_reports_structural_problems_in_body() {
    let dir = TempDir::new().unwrap();
    let out = run_path(&["check"], &write(&dir, "x.json", r#"{"lambda": [5, 4], "mu": [3, 1]}"#));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["interlace"]["common_interlacer"], false);
    assert_eq!(v["interlace"]["first_crossing"], serde_json::json!([0, 1]));
    assert!(v["strong_majorization"]["error"].is_string());

    let out = run_path(&["check"], &write(&dir, "same.json", r#"{"lambda": [1, 0], "mu": [1, 0]}"#));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["reduced"].is_null());
}

#[test]
fn decompose_examples() {
    let dir = TempDir::new().unwrap();
    let out = run_path(&["decompose", "--direction", "pq"], &write(&dir, "a.json", DEG2));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["residues"], serde_json::json!(["-3/2", "3/2"]));

    let out = run_path(&["decompose", "--direction", "qp"], &write(&dir, "b.json", DEG4));
    assert_eq!(stdout_json(&out)["partial_sums"], serde_json::json!(["63/80", "-3/20", "63/80", "0"]));

    let out = run_path(&["decompose"], &write(&dir, "c.json", r#"{"lambda": [1, 0], "mu": [1, 0]}"#));
    assert_eq!(out.status.code(), Some(3));

    let out = run_path(&["decompose"], &write(&dir, "d.json", r#"{"lambda": [3, 1], "mu": [3, 0]}"#));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["removed_positions"], serde_json::json!([0]));
    // (x − 1)/x = 1 − 1/x
    assert_eq!(v["residues"], serde_json::json!(["-1"]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("notice"));
}

#[test]
fn track_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("traj.csv");
    let out =
        bin().args(["track", "--grid", "4", "--csv"]).arg(&csv).arg(write(&dir, "a.json", DEG2)).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["tol"], "1/1152921504606846976");
    assert_eq!(v["monotone_verdicts"][0]["verdict"], "Increasing");

    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], vec!["t", "lambda_1", "lambda_2", "S_1", "S_2"]);
    assert_eq!(rows.len(), 5);
    for (row, expect) in rows[1..].iter().zip([1.0f64, 2f64.sqrt(), 3f64.sqrt(), 2.0]) {
        let got: f64 = row[1].parse().unwrap();
        assert!((got - expect).abs() < 1e-15, "{got} vs {expect}");
    }
    // endpoints are the input roots
    assert!(rows[1][1].starts_with("1.000") && rows[4][1].starts_with("2.000"));
    assert!(rows[4][2].starts_with("-2.000"));
}

#[test]
fn track_errors() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", DEG2);
    assert_eq!(run_path(&["track", "--grid", "1"], &a).status.code(), Some(2));
    assert_eq!(run_path(&["track", "--tol", "0"], &a).status.code(), Some(2));
    let crossing = write(&dir, "x.json", r#"{"lambda": [5, 4], "mu": [3, 1]}"#);
    assert_eq!(run_path(&["track"], &crossing).status.code(), Some(3));
}

#[test]
fn track_diffmaj_violation() {
    let dir = TempDir::new().unwrap();
    let out = run_path(&["track", "--grid", "256", "--tol", "2^-50"], &write(&dir, "b.json", DEG4));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["monotone_verdicts"][1]["verdict"], "ViolatedAt");
    // first proven decrease lies past the midpoint of the path
    let from: Vec<i64> =
        v["monotone_verdicts"][1]["from"].as_str().unwrap().split('/').map(|x| x.parse().unwrap()).collect();
    assert!(2 * from[0] > from[1]);
    assert_eq!(v["monotone_verdicts"][0]["verdict"], "Increasing");
}

#[test]
fn campaign_reports() {
    let out = run(&["campaign", "--theorem", "ncm", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    assert_eq!(v["trials"], 50);

    let out = run(&["campaign", "--theorem", "diffmaj", "--trials", "20", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["statistics"]["confirmed"], 20);

    let out = run(&["campaign", "--theorem", "nscm", "--trials", "4", "--degree", "3", "--grid", "64"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["statistics"]["agree"], 4);
}

#[test]
fn campaign_flag_errors_exit_2() {
    assert_eq!(run(&["campaign", "--theorem", "ncm", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(run(&["campaign", "--theorem", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["campaign", "--theorem", "diffmaj", "--degree", "3", "--trials", "5"]).status.code(), Some(2));
    assert_eq!(run(&["campaign", "--theorem", "nscm", "--grid", "1", "--trials", "5"]).status.code(), Some(2));
}

#[test]
fn campaign_is_deterministic_across_thread_counts() {
    let strip = |out: Output| {
        let mut v = stdout_json(&out);
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    let args = ["campaign", "--theorem", "ncm", "--trials", "40", "--seed", "3", "--degree", "5"];
    let one = bin().args(args).env("INTERLACE_MAJORIZE_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("INTERLACE_MAJORIZE_THREADS", "4").output().unwrap();
    assert_eq!(strip(one), strip(four));
    let bad = bin().args(args).env("INTERLACE_MAJORIZE_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn report_round_trips_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    let out = bin().arg("check").arg(write(&dir, "b.json", DEG4)).arg("--json").arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(text, again);
    assert!(!text.contains('.'), "exact report must not contain decimals");
}
