use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semicrossed"))
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write_spec(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_reports_perpendicular_example() {
    let p = spec("perpendicular6.json");
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["schema"], "semicrossed.report/v1");
    assert_eq!(r["classification"]["perpendicular"], true);
    assert_eq!(r["decomposition"]["factor_sizes"], serde_json::json!([3, 2]));
    assert_eq!(r["invariant"]["distinct"], serde_json::json!([1, 4, 9, 36]));
    let ids = r["identifications"].as_array().unwrap();
    assert!(ids.iter().any(|i| i["verified"] == true));
    assert!(r["pattern"].get("keys").is_none_or(Value::is_null));
}

#[test]
fn analyze_degree_override_and_keys() {
    let p = spec("shift6.json");
    let out = run(&["analyze", p.to_str().unwrap(), "--degree", "3", "--keys"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["input"]["degree"], 3);
    assert!(!r["pattern"]["keys"].as_array().unwrap().is_empty());
    assert!(!r["invariant"]["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.txt");
    let out = run(&[
        "analyze",
        spec("shift6.json").to_str().unwrap(),
        "--format",
        "text",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.contains("B_{6,2}: verified to degree 8"), "{text}");
}

#[test]
fn compare_distinguishes_cycle_from_product() {
    let a = spec("shift6.json");
    let b = spec("perpendicular6.json");
    let out = run(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["verdict"], "distinguished");
    let same = run(&["compare", b.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(json(&same)["verdict"], "indistinguishable");
}

#[test]
fn decompose_exit_codes() {
    let ok = run(&["decompose", spec("klein4.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["perpendicular"], true);
    let dir = tempfile::tempdir().unwrap();
    let fixed = write_spec(&dir, "fixed.json", r#"{"k": 3, "sigma1": "(0 1)", "sigma2": "()"}"#);
    let not = run(&["decompose", fixed.to_str().unwrap()]);
    assert_eq!(not.status.code(), Some(1));
    assert_eq!(json(&not)["perpendicular"], false);
}

#[test]
fn sweep_outputs() {
    let jsonl = run(&["sweep", "--max-k", "3"]);
    assert!(jsonl.status.success());
    let rows: Vec<Value> = String::from_utf8(jsonl.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 1 + 4 + 8);
    let csv = run(&["sweep", "--max-k", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 1 + 1 + 4);
    let too_big = run(&["sweep", "--max-k", "99"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn malformed_specs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("garbage.json", "not json"),
        ("dup.json", r#"{"k": 3, "sigma1": [0, 0, 1], "sigma2": [0, 1, 2]}"#),
        ("range.json", r#"{"k": 3, "sigma1": "(0 5)", "sigma2": "()"}"#),
        ("extra.json", r#"{"k": 2, "sigma1": "()", "sigma2": "()", "colour": 1}"#),
    ] {
        let path = write_spec(&dir, name, body);
        let out = run(&["analyze", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let missing = run(&["analyze", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn non_commuting_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(&dir, "nc.json", r#"{"k": 3, "sigma1": "(0 1)", "sigma2": "(1 2)"}"#);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}
