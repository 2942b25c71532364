use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ncch() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ncch"))
}

fn example(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(["..", "..", "book", "src", "examples", name]);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    ncch().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = ncch()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn without_millis(mut v: Value) -> Value {
    if let Value::Array(items) = &mut v {
        for item in items {
            item.as_object_mut().unwrap().remove("millis");
        }
    }
    v
}

#[test]
fn sdet_of_generic_matrix() {
    let o = run(&["compute", "sdet", "--input", &example("generic_2x2.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a*d - b*c - c*b + d*a\n");
}

#[test]
fn sadj_of_generic_matrix() {
    let o = run(&["compute", "sadj", "--input", &example("generic_2x2.txt")]);
    assert_eq!(stdout(&o), "d, -b\n-c, a\n");
}

#[test]
fn cparts_golden() {
    let o = run(&["compute", "cparts", "--input", &example("generic_2x2.txt")]);
    let expected = "\
sdet = a*d - b*c - c*b + d*a
A* =
  d, -b
  -c, a
C =
  -a*d - b*c + c*b + d*a, -2*b*d + 2*d*b
  2*a*c - 2*c*a, a*d + b*c - c*b - d*a
D =
  a*d - b*c + c*b - d*a, -2*a*b + 2*b*a
  2*c*d - 2*d*c, -a*d + b*c - c*b + d*a
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn charpoly_of_identity() {
    let o = run(&["compute", "charpoly", "--input", &example("identity_2x2.txt")]);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("p(t) = 2*t^2 - 4*t + 2"));
    assert!(out.contains("mu_0 = 2\nmu_1 = -4\nmu_2 = 2\n"));
}

#[test]
fn compute_json_from_stdin() {
    let o = run_stdin(&["compute", "sdet", "--format", "json"], "ring grassmann 2\n[v1, v2]\n");
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sdet"], "2*v1*v2");
    assert_eq!(v["n"], 1);
}

#[test]
fn parse_error_exits_2() {
    let o = run_stdin(&["compute", "sdet"], "ring free a, b\na, b\nc\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn rank_violation_exits_2() {
    let o = run_stdin(&["compute", "sdet"], "ring grassmann 4\nv7\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_violation_exits_3() {
    let row = ["1"; 7].join(", ");
    let body = vec![row; 7].join("\n");
    let o = run_stdin(&["compute", "sdet"], &format!("ring rational\n{body}\n"));
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        run(&["verify", "--check", "trace_sdet", "--n", "7"]).status.code(),
        Some(3)
    );
}

#[test]
fn unknown_check_exits_2_with_names() {
    let o = run(&["verify", "--check", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("trace_sdet") && err.contains("coefficient_square"));
}

#[test]
fn verify_graded_identity_by_alias() {
    let o = run(&[
        "verify",
        "--check",
        "thm25",
        "--ring",
        "grassmann:6",
        "--n",
        "2",
        "--trials",
        "20",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["schema"], 1);
    assert_eq!(v[0]["trials"], 20);
    assert_eq!(v[0]["check"], "ac_minus_da_graded");
}

#[test]
fn failing_probe_exits_1_with_replayable_instance() {
    let o = run(&[
        "verify",
        "--check",
        "power_probe",
        "--ring",
        "free",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "fail");
    let instance = v[0]["counterexample"]["instance"].as_str().unwrap();
    let replay = run_stdin(&["compute", "sdet"], instance);
    assert_eq!(stdout(&replay), "a*d - b*c - c*b + d*a\n");
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--check",
        "all",
        "--ring",
        "grassmann:6",
        "--n",
        "2",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    let b: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert!(a.as_array().unwrap().len() > 5);
    assert_eq!(without_millis(a), without_millis(b));
}

#[test]
fn text_and_json_agree() {
    let base = [
        "verify", "--check", "all", "--ring", "rational", "--n", "3", "--trials", "5",
    ];
    let text = stdout(&run(&base));
    let json: Value = serde_json::from_slice(&run(&[&base[..], &["--format", "json"]].concat()).stdout).unwrap();
    let from_json: Vec<(String, String)> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["check"].as_str().unwrap().to_string(),
                r["status"].as_str().unwrap().to_uppercase(),
            )
        })
        .collect();
    let from_text: Vec<(String, String)> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("ERROR"))
        .map(|l| {
            let mut w = l.split_whitespace();
            let status = w.next().unwrap().to_string();
            (w.next().unwrap().to_string(), status)
        })
        .collect();
    assert_eq!(from_text, from_json);
}
