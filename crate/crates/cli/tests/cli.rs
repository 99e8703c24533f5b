use std::process::{Command, Output};

use serde_json::Value;

fn freediv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freediv")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_reports_a_free_divisor() {
    let out = freediv(&["analyze", "x*y*(x+y)*z", "--ring", "x,y,z"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["results"]["divisor"]["is_free"], true);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn analyze_output_is_deterministic() {
    let args = ["analyze", "--family", "family1:n=4", "--tasks", "divisor,blowup,maxspread"];
    let a = freediv(&args);
    let b = freediv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let out = freediv(&["analyze", "x*y*z", "--ring", "x,y,z", "--timing"]);
    assert!(json(&out)["timing_ms"].is_object());
}

#[test]
fn text_format_prints_paths() {
    let out = freediv(&["analyze", "x*y*z", "--ring", "x,y,z", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l.starts_with("results.divisor.is_free: true")), "{s}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(freediv(&["analyze", "x*(y", "--ring", "x,y"]).status.code(), Some(2));
    assert_eq!(freediv(&["analyze", "x^2 + y", "--ring", "x,y"]).status.code(), Some(2));
    assert_eq!(freediv(&["analyze", "x*q", "--ring", "x,y"]).status.code(), Some(2));
    assert_eq!(freediv(&["analyze", "x*y", "--ring", "x,y", "--tasks", "nope"]).status.code(), Some(2));
    assert_eq!(freediv(&["family", "family1:n=40"]).status.code(), Some(2));
    assert_eq!(freediv(&["family", "family9:n=4"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_3_and_marks_truncation() {
    let out = freediv(&["analyze", "--family", "family1:n=5", "--tasks", "blowup,depth-table", "--deadline", "0.000001"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert!(!v["truncated"].as_array().unwrap().is_empty());
    assert!(v["results"].get("blowup").is_none());
}

#[test]
fn family_subcommand_checks_claims() {
    let out = freediv(&["family", "family2:n=2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["fixtures"][0]["passed"], true);
    let out = freediv(&["family", "family3:alpha=2,beta=3", "--no-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["polynomial"].as_str().is_some());
}

#[test]
fn regress_skips_slow_fixtures_by_default() {
    let out = freediv(&["regress"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["skipped_slow"], serde_json::json!(["family1-n6"]));
}

#[test]
fn corrupted_manifest_claim_fails_regression() {
    let manifest = String::from_utf8(freediv(&["manifest"]).stdout).unwrap();
    let dir = std::env::temp_dir().join(format!("freediv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let good = dir.join("good.jsonl");
    std::fs::write(&good, &manifest).unwrap();
    assert_eq!(freediv(&["regress", "--manifest", good.to_str().unwrap()]).status.code(), Some(0));

    let needle = r#"{"kind":"degree","value":4}"#;
    assert!(manifest.contains(needle));
    let bad = dir.join("bad.jsonl");
    std::fs::write(&bad, manifest.replacen(needle, r#"{"kind":"degree","value":7}"#, 1)).unwrap();
    let out = freediv(&["regress", "--manifest", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("family1-n4") && err.contains("degree 4"), "{err}");

    let torn = dir.join("torn.jsonl");
    std::fs::write(&torn, manifest.replacen("family1:n=4", "family1:n=5", 1)).unwrap();
    assert_eq!(freediv(&["regress", "--manifest", torn.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
