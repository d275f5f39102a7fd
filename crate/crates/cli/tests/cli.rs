use std::path::PathBuf;

use pervcoh_cli::{execute, render_report, CheckRecord, Mode, Report, Status};
use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> pervcoh_cli::Outcome {
    let mut argv = vec!["pervcoh"];
    argv.extend_from_slice(args);
    execute(&argv)
}

#[test]
fn check_structure_sheaf_fails_with_open_witness() {
    let out = run(&["check", &fixture("cone.json"), "--complex", "O_X"]);
    assert_eq!(out.code, 2);
    let report: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["status"], "fail");
    let le0 = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "le0[O_X]").unwrap();
    assert_eq!(le0["witnesses"][0]["stratum"], "open");
    assert_eq!(le0["witnesses"][0]["degree"], 0);
    assert!(out.stderr.contains("FAIL le0[O_X]"));
    assert!(out.stderr.contains("\"stratum\":\"open\""));
}

#[test]
fn crossvalidate_reports_agreement() {
    let out = run(&["crossvalidate", &fixture("cone.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report: Value = serde_json::from_str(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let perverse: Vec<_> = checks
        .iter()
        .filter(|c| c["detail"]["is_perverse"] == true)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(perverse, vec!["equivalence[O_X[1]]", "equivalence[k0]"]);
    let skipped: Vec<_> = checks.iter().filter(|c| c["detail"].get("skipped").is_some()).collect();
    assert_eq!(skipped.len(), 1);
    assert_eq!(skipped[0]["name"], "equivalence[O_line]");
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["crossvalidate", "plane.json"],
        vec!["construct", "cone.json", "--seed", "4"],
        vec!["validate", "line.json"],
    ] {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        args[1] = fixture(&args[1]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&refs).stdout, run(&refs).stdout);
    }
}

#[test]
fn digest_is_stable_under_reserialization() {
    let a = run(&["validate", &fixture("cone.json")]);
    let dir = std::env::temp_dir().join(format!("pervcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let copy = dir.join("cone.json");
    // same document, compact formatting
    let text = std::fs::read_to_string(fixture("cone.json")).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    std::fs::write(&copy, serde_json::to_string(&value).unwrap()).unwrap();
    let b = run(&["validate", copy.to_str().unwrap()]);
    let digest = |o: &pervcoh_cli::Outcome| serde_json::from_str::<Value>(&o.stdout).unwrap()["digest"].clone();
    assert_eq!(digest(&a), digest(&b));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construct_round_trip() {
    let dir = std::env::temp_dir().join(format!("pervcoh-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("plane.json");
    let o = run(&["construct", &fixture("plane.json"), "--pool", "x+y,x*y", "--name", "z", "--out", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let report: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["checks"][0]["detail"]["cutting"], json!([{"function": "x+y", "step": 0}, {"function": "x*y", "step": 1}]));
    assert_eq!(run(&["check", out.to_str().unwrap(), "--family", "z"]).code, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_one_with_location() {
    let o = run(&["validate", &fixture("malformed/undeclared_variable.json")]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("variety_ideal[0]"), "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let o = run(&["validate", &fixture("malformed/unknown_field.json")]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("colour"));
    assert_eq!(run(&["bogus"]).code, 1);
    assert_eq!(run(&["check", &fixture("cone.json")]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

fn record(name: &str, result: bool, witnesses: Vec<Value>) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        result,
        witnesses,
        detail: None,
        timing: std::time::Duration::from_millis(3),
    }
}

#[test]
fn render_modes() {
    let pass = Report {
        command: "check".into(),
        digest: "00".into(),
        status: Status::Pass,
        checks: vec![record("a", true, vec![]), record("b", true, vec![])],
    };
    assert_eq!(render_report(&pass, Mode::Canonical), render_report(&pass.clone(), Mode::Canonical));
    let summary = render_report(&pass, Mode::Summary);
    assert_eq!(summary.lines().count(), 2);
    assert!(summary.lines().all(|l| l.starts_with("PASS ") && !l.contains('{')));

    let fail = Report {
        status: Status::Fail,
        checks: vec![record("a", false, vec![json!({"degree": 0}), json!({"degree": 1})])],
        ..pass
    };
    let summary = render_report(&fail, Mode::Summary);
    assert!(summary.contains("FAIL a") && summary.contains("{\"degree\":0}") && !summary.contains("\"degree\":1"));
    // timing never reaches the canonical form
    let mut slower = fail.clone();
    slower.checks[0].timing = std::time::Duration::from_secs(9);
    assert_eq!(render_report(&fail, Mode::Canonical), render_report(&slower, Mode::Canonical));
}
