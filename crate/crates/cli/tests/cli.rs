use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn mtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtc")).args(args).env_remove("MTC_SEARCH_BUDGET").output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_fixture_passes() {
    let o = mtc(&["validate", path_str(&fixture("toric_code"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mtc(&["--format", "json", "validate", path_str(&fixture("ising"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
    assert!(o.stderr.is_empty());
}

#[test]
fn tampered_twist_fails_balancing() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("toric_code")).unwrap()).unwrap();
    v["modular_data"]["T"][3] = serde_json::json!({"N": 1, "c": [["1", "1"]]});
    v.as_object_mut().unwrap().remove("metric_group");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = mtc(&["validate", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] st_balancing"), "{}", stdout(&o));
}

#[test]
fn missing_and_malformed_files_exit_2() {
    assert_eq!(mtc(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"name\": 3}").unwrap();
    assert_eq!(mtc(&["verdict", path_str(&path)]).status.code(), Some(2));
    assert_eq!(mtc(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verdict_examples() {
    let o = mtc(&["--format", "json", "verdict", path_str(&fixture("fibonacci"))]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "NoBoundary_CentralCharge");
    assert_eq!(v["central_charge"], "14/5 mod 8");

    let o = mtc(&["--format", "json", "verdict", "--pointed", path_str(&fixture("toric_code"))]);
    let v = json(&o);
    assert_eq!(v["verdict"], "ExactBoundaries");
    assert_eq!(v["candidates"].as_array().unwrap().len(), 2);
    assert_eq!(v["exact"], true);

    let o = mtc(&["--format", "json", "verdict", path_str(&fixture("double_ising"))]);
    let v = json(&o);
    assert_eq!(v["verdict"], "CandidatesFound");
    let diagonal = serde_json::json!([1, 0, 0, 0, 1, 0, 0, 0, 1]);
    assert!(v["candidates"].as_array().unwrap().contains(&diagonal));
    assert!(v["filtered_candidates"].as_array().unwrap().contains(&diagonal));
    assert!(v["caveats"][0].as_str().unwrap().contains("mod 8"));

    let o = mtc(&["--format", "json", "verdict", "--no-fusion-filter", path_str(&fixture("double_ising"))]);
    assert!(json(&o).get("filtered_candidates").is_none());
}

#[test]
fn pointed_flag_needs_metric_group() {
    assert_eq!(mtc(&["verdict", "--pointed", path_str(&fixture("ising"))]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_mtc"))
        .args(["verdict", path_str(&fixture("double_ising"))])
        .env("MTC_SEARCH_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn double_then_validate_and_verdict() {
    let dir = tempfile::tempdir().unwrap();
    for (name, rank) in [("semion", 4), ("trivial", 1), ("fibonacci", 4)] {
        let out = dir.path().join(format!("double_{name}.json"));
        let o = mtc(&["double", path_str(&fixture(name)), "-o", path_str(&out)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["modular_data"]["T"].as_array().unwrap().len(), rank);
        assert_eq!(mtc(&["validate", path_str(&out)]).status.code(), Some(0));
        let verdict = json(&mtc(&["--format", "json", "verdict", path_str(&out)]));
        assert_eq!(verdict["central_charge"], "0 mod 8");
        assert!(!verdict["candidates"].as_array().unwrap().is_empty());
    }
}

#[test]
fn decompose_examples() {
    let v = json(&mtc(&["--format", "json", "decompose", path_str(&fixture("m2"))]));
    assert_eq!(v["components"], serde_json::json!([[0, 1]]));
    assert_eq!(v["corners"][0]["labels"], serde_json::json!(["e11"]));

    let v = json(&mtc(&["--format", "json", "decompose", path_str(&fixture("fib_plus_z2"))]));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);

    let v = json(&mtc(&["--format", "json", "decompose", path_str(&fixture("m2_times_fib"))]));
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
    assert_eq!(v["corners"][0]["labels"], serde_json::json!(["(e11,1)", "(e11,tau)"]));
    assert_eq!(v["blocks"]["(e21,tau)"], serde_json::json!([1, 0]));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["--format", "json", "verdict"],
        vec!["--format", "json", "validate"],
    ] {
        let mut a = args.clone();
        let p = fixture("double_toric_code");
        a.push(path_str(&p));
        assert_eq!(mtc(&a).stdout, mtc(&a).stdout);
    }
}

#[test]
fn fixtures_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = mtc(&["fixtures", "--export", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("double_ising"));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_owned();
        let shipped = std::fs::read_to_string(fixture(name.trim_end_matches(".json"))).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), shipped, "{name}");
    }
}
