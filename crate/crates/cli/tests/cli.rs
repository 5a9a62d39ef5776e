use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lrdesk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrdesk")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn run_file(dir: &TempDir, text: &str, extra: &[&str]) -> (Output, Option<Value>) {
    let scenario = write(dir, "scenario.json", text);
    let out = dir.path().join("report.json");
    let _ = std::fs::remove_file(&out);
    let mut args = vec!["run", "--scenario", &scenario, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = lrdesk(&args);
    let r = out.exists().then(|| report(&out));
    (o, r)
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["scenarios"][0]["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn gm_fixed_point_table() {
    let dir = TempDir::new().unwrap();
    let (o, r) = run_file(&dir, r#"{"kind": "gm", "parameters": {"N": 5, "p": 2, "m_max": 4}}"#, &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = r.unwrap();
    assert_eq!(r["scenarios"][0]["data"]["fixed_point_table"], serde_json::json!([0, 0, 0, 4]));
    assert_eq!(r["scenarios"][0]["scenario"]["parameters"]["N"], 5);
    for c in r["scenarios"][0]["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(!c["paper_anchor"].as_str().unwrap().is_empty());
    }
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 failed"));
}

#[test]
fn json_goes_to_stdout_without_out() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "gw.json", r#"{"kind": "grunwald-wang"}"#);
    let o = lrdesk(&["run", "--scenario", &s]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["scenarios"][0]["name"], "gw");
}

#[test]
fn building_example_and_depth_flag() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"kind": "building", "parameters": {"n": 2, "v1": 1, "v2": 3, "p": 5, "depth": 2}}"#;
    let (o, r) = run_file(&dir, text, &["--depth", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = r.unwrap();
    assert_eq!(check(&r, "frob_power_valuations")["witness"]["valuations"], serde_json::json!([1, 3]));
    assert_eq!(check(&r, "xp_contains_base")["witness"]["depth"], 1);
}

#[test]
fn failing_check_exits_one() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"kind": "torus", "parameters": {"r": 1, "mu": [1], "eps_valuation": [2]}}"#;
    let (o, r) = run_file(&dir, text, &[]);
    assert_eq!(o.status.code(), Some(1));
    let r = r.unwrap();
    assert_eq!(check(&r, "star_epsilon")["status"], "fail");
    assert_eq!(r["summary"]["failed"], 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    for bad in [
        "{ not json",
        r#"{"kind": "moduli"}"#,
        r#"{"kind": "gm", "parameters": {"N": 5}}"#,
        r#"{"kind": "gm", "parameters": {"N": 4, "p": 2, "m_max": 3}}"#,
        r#"{"kind": "gm", "parameters": {"N": 5, "p": 2, "m_max": 3}, "colour": 1}"#,
        r#"{"kind": "building", "parameters": {"v1": 1, "v2": 2, "p": 5}}"#,
    ] {
        let (o, r) = run_file(&dir, bad, &[]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(r.is_none());
        assert!(!o.stderr.is_empty());
    }
    let o = lrdesk(&["run", "--scenario", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(lrdesk(&["suite", "nothing"]).status.code(), Some(2));
}

#[test]
fn worked_example_suite_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("examples.json");
    let o = lrdesk(&["suite", "paper", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&out);
    assert!(r["summary"]["checks"].as_u64().unwrap() > 20);
    assert_eq!(r["summary"]["failed"], 0);
}

#[test]
fn random_suite_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, seed: &str, jobs: &str| {
        let out = dir.path().join(name);
        let o = lrdesk(&["suite", "random", "--seed", seed, "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    let a = run("a.json", "5", "1");
    let b = run("b.json", "5", "4");
    assert_eq!(a, b);
    let c = run("c.json", "6", "2");
    assert_ne!(a, c);
}

#[test]
fn timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"kind": "kappa", "parameters": {"case": "nested"}}"#;
    let (_, plain) = run_file(&dir, text, &[]);
    assert!(plain.unwrap()["scenarios"][0].get("elapsed_ms").is_none());
    let (_, timed) = run_file(&dir, text, &["--timing"]);
    assert!(timed.unwrap()["scenarios"][0]["elapsed_ms"].is_number());
}

#[test]
fn explain_and_list() {
    let o = lrdesk(&["explain", "gw_not_injective"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("ker(H¹(Q, V)"));
    assert_eq!(lrdesk(&["explain", "no_such_check"]).status.code(), Some(2));
    let o = lrdesk(&["list-builtins"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.lines().count() >= 20);
    assert!(text.contains("gm_n5_p2") && text.contains("random"));
}
