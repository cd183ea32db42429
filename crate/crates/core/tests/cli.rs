use std::process::{Command, Output};

use modres_core::report::{Aggregate, Check, Job, Report, Status};
use serde_json::Value;

fn modres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modres")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn jobs_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("modres-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn resolve_report_shape() {
    let out = modres(&["resolve", "--p", "3", "--n", "4", "--k", "1", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["terms"], serde_json::json!([5, 1]));
    assert_eq!(v["results"]["dims"], serde_json::json!([1, 2]));
    assert_eq!(v["results"]["exact"], Value::Bool(true));
    assert_eq!(v["results"]["dimD"], serde_json::json!(1));
    assert_eq!(v["timings_ms"], serde_json::json!({}));
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(c["name"].is_string() && c["details"].is_string());
    }
}

#[test]
fn dims_genus_three() {
    let v = json(&modres(&["dims", "--p", "5", "--g", "3", "--output", "json"]));
    assert_eq!(v["results"]["verlinde"], serde_json::json!([14, 14, 6, 1]));
    assert_eq!(v["results"]["closed_form"], serde_json::json!([14, 14, 6, 1]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(modres(&["resolve", "--p", "4", "--n", "4", "--k", "1"]).status.code(), Some(2));
    assert_eq!(modres(&["resolve", "--p", "3", "--n", "4", "--k", "2"]).status.code(), Some(2));
    assert_eq!(modres(&["resolve", "--p", "3"]).status.code(), Some(2));
    assert_eq!(modres(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(modres(&[]).status.code(), Some(2));
    assert_eq!(modres(&["alexander", "--g", "2", "--word", "e1"]).status.code(), Some(2));
}

#[test]
fn batch_preserves_order() {
    let path = jobs_file(
        "order",
        r#"[
            {"command": "resolve", "p": 5, "n": 7, "k": 2},
            {"command": "resolve", "p": 3, "n": 4, "k": 1},
            {"command": "resolve", "p": 7, "n": 9, "k": 4}
        ]"#,
    );
    let out = modres(&["--jobs", path.to_str().unwrap(), "--workers", "3", "--output", "json"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ps: Vec<u64> = v["jobs"].as_array().unwrap().iter().map(|r| r["job"]["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, vec![5, 3, 7]);
    assert_eq!(v["status"], "pass");
}

#[test]
fn empty_batch_passes() {
    let path = jobs_file("empty", "[]");
    let out = modres(&["--jobs", path.to_str().unwrap(), "--output", "json"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["jobs"], serde_json::json!([]));
}

#[test]
fn malformed_batch_reports_line() {
    let path = jobs_file("bad", "[\n  {\"command\": \"resolve\",\n   \"q\": 3}\n]");
    let out = modres(&["--jobs", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn one_failing_job_fails_the_aggregate() {
    let report = |status| Report {
        job: serde_json::from_str::<Job>(r#"{"command": "dims", "p": 5, "g": 1}"#).unwrap(),
        results: Value::Null,
        checks: vec![Check { name: "verlinde-assembled".into(), status, details: String::new() }],
        timings_ms: Default::default(),
    };
    let agg = Aggregate::new(vec![report(Status::Pass), report(Status::Fail), report(Status::Pass)]);
    assert_eq!(agg.status, Status::Fail);
    let statuses: Vec<bool> = agg.jobs.iter().map(Report::passed).collect();
    assert_eq!(statuses, vec![true, false, true]);
    assert!(Aggregate::new(vec![report(Status::Skip)]).jobs[0].passed());
}

#[test]
fn seeded_output_is_stable() {
    let args = ["alexander", "--g", "2", "--p", "5", "--seed", "7", "--output", "json"];
    let (a, b) = (modres(&args), modres(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = modres(&["alexander", "--g", "2", "--p", "5", "--seed", "8", "--output", "json"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn subcommands_run() {
    for args in [
        vec!["character", "--p", "5", "--tau", "4,2"],
        vec!["character", "--p", "5", "--tau", "4,2", "--cycle", "3,2,1"],
        vec!["factors", "--p", "3", "--tau", "9,2"],
        vec!["fusion", "--p", "5"],
        vec!["alexander", "--g", "1", "--word", "S1 Ta1", "--p", "3", "--sign", "-1"],
        vec!["jm", "--quick"],
        vec!["selftest", "--quick"],
    ] {
        let out = modres(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8(out.stdout).unwrap().contains("[PASS]"));
    }
}
