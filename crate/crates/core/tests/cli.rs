use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn xiform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xiform")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("xiform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(xiform(&[]).status.code(), Some(2));
    assert_eq!(xiform(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(xiform(&["verify", "--vars", "0"]).status.code(), Some(2));
    assert_eq!(xiform(&["verify", "--max-arity", "x"]).status.code(), Some(2));
    assert_eq!(xiform(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(xiform(&["--help"]).status.code(), Some(0));
}

#[test]
fn obstruction_suite_reports_zero_solutions() {
    let path = tmp("obstruction.json");
    let out = xiform(&["verify", "--suite", "obstruction", "--vars", "3", "--seed", "7", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&path);
    let suites = report.as_array().unwrap();
    assert_eq!(suites.len(), 1);
    let s = &suites[0];
    for key in ["suite", "budget", "checked", "failures", "dims"] {
        assert!(s.get(key).is_some(), "missing {key}");
    }
    assert_eq!(s["suite"], "obstruction");
    assert_eq!(s["failures"].as_array().unwrap().len(), 0);
    for d in s["dims"].as_array().unwrap() {
        assert_eq!(d["rank"], 2);
        assert_eq!(d["solution"], serde_json::json!(["0", "0"]));
    }
    assert!(String::from_utf8_lossy(&out.stdout).contains("obstruction"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tmp("run-a.json"), tmp("run-b.json"));
    let args = ["verify", "--suite", "witt", "--suite", "braces", "--suite", "harrison", "--seed", "3"];
    for p in [&a, &b] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--json", p.to_str().unwrap()]);
        assert_eq!(xiform(&full).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let names: Vec<String> =
        read_json(&a).as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["witt", "braces", "harrison"]);
}

#[test]
fn hkr_suite_matches_polyvector_dimensions() {
    let path = tmp("hkr.json");
    let out = xiform(&["verify", "--suite", "hkr", "--vars", "2", "--max-arity", "2", "--max-weight", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_json(&path);
    assert!(report[0]["checked"].as_u64().unwrap() > 0);
}

#[test]
fn unwritable_report_is_an_internal_error() {
    let out = xiform(&["verify", "--suite", "witt", "--json", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(3));
}
