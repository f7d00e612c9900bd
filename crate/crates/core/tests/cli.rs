use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

use toroidal::cli::{self, catalog, report_to_string, run, RunOptions};
use toroidal::scenario::{parse_scenario, ScenarioError};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_toroidal"));
    c.env_remove(catalog::ENV_VAR);
    c
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toroidal-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn bundled(name: &str) -> Value {
    serde_json::from_str(&catalog::get(name).unwrap()).unwrap()
}

fn write_json(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

#[test]
fn catalog_round_trips() {
    let names = catalog::names();
    assert!(names.len() >= 5);
    for name in ["identity", "plane_pair", "quadric_cone", "augmentation", "remark2"] {
        assert!(names.iter().any(|n| n == name), "{name} missing from the catalog");
    }
    for name in names {
        let text = catalog::get(&name).unwrap();
        let s = parse_scenario(&text).unwrap();
        let again = s.to_json();
        assert_eq!(parse_scenario(&again).unwrap(), s, "{name}");
        assert_eq!(parse_scenario(&again).unwrap().to_json(), again, "{name}");
    }
}

#[test]
fn every_catalog_scenario_meets_its_assertions() {
    for name in catalog::names() {
        let s = parse_scenario(&catalog::get(&name).unwrap()).unwrap();
        for command in [cli::Command::Check, cli::Command::Monomialize] {
            let out = run(command, Some(&s), &RunOptions::default());
            assert_ne!(out.exit_code, cli::EXIT_BREACH, "{name} {}: {}", command.name(), out.summary);
            if let Some(a) = out.report.get("assertions") {
                assert_eq!(a["pass"], json!(true), "{name}: {a}");
            }
        }
    }
}

#[test]
fn parse_errors_carry_a_location() {
    let err = parse_scenario("{\n  \"schema_version\": 1,\n  oops\n}").unwrap_err();
    match err {
        ScenarioError::Parse { line, .. } => assert_eq!(line, 3),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn check_and_counterexample_succeed() {
    let out = bin().args(["check", "plane_pair"]).output().unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("smooth"));

    let out = bin().arg("counterexample").output().unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn mathematical_negatives_exit_one() {
    let dir = scratch("negative");
    let mut doc = bundled("plane_pair");
    doc["name"] = json!("square_map");
    doc["pullbacks"] = json!([[{"chi": [1, 1], "c": "1"}], [{"chi": [2, 2], "c": "1"}]]);
    doc["assertions"] = json!({"verdict": "not_smooth", "dominant": true});
    let path = dir.join("square_map.json");
    write_json(&path, &doc);
    let out = bin().args(["check", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&out), 1, "{}", stdout(&out));

    let out = bin().args(["monomialize", "remark2"]).output().unwrap();
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("ResidueFieldHypothesisViolated"));

    let out = bin().args(["monomialize", "remark2", "--mode", "root-capable"]).output().unwrap();
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("RootExtractionFailed"));
}

#[test]
fn input_errors_exit_two() {
    let out = bin().args(["check", "no_such_scenario"]).output().unwrap();
    assert_eq!(code(&out), 2);

    let dir = scratch("input");
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{ \"schema_version\": 1, ").unwrap();
    let out = bin().args(["check", broken.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("parse error"), "{}", stdout(&out));

    let mut doc = bundled("plane_pair");
    doc["source_monoid"]["saturated"] = json!(false);
    let bad = dir.join("unsaturated.json");
    write_json(&bad, &doc);
    let out = bin().args(["check", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&out), 2, "{}", stdout(&out));

    let out = bin().args(["verify", "plane_pair", "--result", "/nonexistent/report.json"]).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn failed_assertions_exit_three() {
    let dir = scratch("assert");
    let mut doc = bundled("plane_pair");
    doc["assertions"]["lambda"] = json!(["1", "3"]);
    let path = dir.join("wrong_lambda.json");
    write_json(&path, &doc);
    let out = bin().args(["monomialize", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&out), 3, "{}", stdout(&out));
}

#[test]
fn verify_accepts_stored_results_and_catches_tampering() {
    let dir = scratch("verify");
    let report = dir.join("plane_pair.json");
    let out = bin()
        .args(["monomialize", "plane_pair", "--report", report.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let out = bin().args(["verify", "plane_pair", "--result", report.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let mut stored: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    stored["result"]["epsilon"][0]
        .as_array_mut()
        .unwrap()
        .push(json!({"key": [1, 0], "c": "1"}));
    let tampered = dir.join("tampered.json");
    write_json(&tampered, &stored);
    let out = bin().args(["verify", "plane_pair", "--result", tampered.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&out), 1, "{}", stdout(&out));
}

#[test]
fn reports_are_byte_identical_and_timing_is_opt_in() {
    let dir = scratch("determinism");
    let (a, b, t) = (dir.join("a.json"), dir.join("b.json"), dir.join("t.json"));
    for path in [&a, &b] {
        let out = bin()
            .args(["monomialize", "quadric_cone", "--order", "8", "--report", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["truncation"], json!(8));
    assert!(report.get("elapsed_ms").is_none());

    bin().args(["check", "identity", "--timing", "--report", t.to_str().unwrap()]).output().unwrap();
    let timed: Value = serde_json::from_slice(&std::fs::read(&t).unwrap()).unwrap();
    assert!(timed.get("elapsed_ms").is_some());
}

#[test]
fn catalog_directory_override() {
    let dir = scratch("catalog");
    let mut doc = bundled("identity");
    doc["name"] = json!("only_one");
    write_json(&dir.join("only_one.json"), &doc);

    let list = bin().arg("list").env(catalog::ENV_VAR, &dir).output().unwrap();
    assert_eq!(stdout(&list).trim(), "only_one");
    let out = bin().args(["check", "only_one"]).env(catalog::ENV_VAR, &dir).output().unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = bin().args(["check", "plane_pair"]).env(catalog::ENV_VAR, &dir).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn in_process_report_matches_binary_report() {
    let dir = scratch("same");
    let path = dir.join("r.json");
    bin().args(["check", "augmentation", "--report", path.to_str().unwrap()]).output().unwrap();
    let s = parse_scenario(&catalog::get("augmentation").unwrap()).unwrap();
    let out = run(cli::Command::Check, Some(&s), &RunOptions::default());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), report_to_string(&out.report));
}
