use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn vcchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcchrom"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = vcchrom(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    vcchrom(args).status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn petersen_file(tag: &str) -> String {
    let path = scratch(&format!("petersen-{tag}.json"));
    fs::write(&path, ok(&["generate", "kneser", "--n", "2", "--k", "1"])).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn generate_echoes_params_and_labels() {
    let doc: Value =
        serde_json::from_str(&ok(&["generate", "kneser", "--n", "2", "--k", "1"])).unwrap();
    assert_eq!(doc["n"], 10);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 15);
    assert_eq!(doc["params"]["generator"], "kneser");
    assert_eq!(doc["labels"].as_array().unwrap().len(), 10);
}

#[test]
fn analyze_reports_metrics() {
    let g = petersen_file("analyze");
    let row: Value =
        serde_json::from_str(&ok(&["analyze", &g, "--chi", "--chistar", "--alpha"])).unwrap();
    assert_eq!(row["metrics"]["chi"], 3);
    assert_eq!(row["metrics"]["chistar"], "5/2");
    assert_eq!(row["metrics"]["alpha"], 4);
    let all: Value = serde_json::from_str(&ok(&["analyze", &g, "--all"])).unwrap();
    assert_eq!(all["metrics"]["weighted-min-degree"], Value::Null);
    assert_eq!(all["metrics"]["odd-girth"], 5);
    assert_eq!(code(&["analyze", &g, "--weighted-min-degree"]), 2);
    let csv = ok(&["analyze", &g, "--chi", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn pipeline_report_verifies_and_tampering_is_caught() {
    let g = petersen_file("pipeline");
    let report = scratch("tricube.json");
    ok(&["pipeline", "tricube", &g, "--out", report.to_str().unwrap()]);
    let r = report.to_str().unwrap();
    ok(&["verify", r, &g]);

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let colors = doc["report"]["coloring"]["color"].as_array_mut().unwrap();
    let first = colors[0].clone();
    for c in colors.iter_mut() {
        *c = first.clone();
    }
    let bad = scratch("tricube-bad.json");
    fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&["verify", bad.to_str().unwrap(), &g]), 4);
}

#[test]
fn validation_and_guard_exit_codes() {
    assert_eq!(
        code(&["generate", "hajnal", "--k", "1", "--n", "1", "--l", "4"]),
        2
    );
    assert_eq!(code(&["generate", "nope"]), 2);
    let g = petersen_file("codes");
    assert_eq!(code(&["pipeline", "booster", &g, "--p", "9"]), 2);
    assert_eq!(code(&["analyze", &g, "--chi", "--guard-vertices", "5"]), 3);
}

#[test]
fn dot_and_dimacs_output() {
    let dot = ok(&["generate", "zykov", "--k", "1", "--format", "dot"]);
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("0 -- 1;"));
    let dimacs = ok(&["generate", "zykov", "--k", "2", "--format", "dimacs"]);
    assert!(dimacs.starts_with("p edge 8 10\n"));
    let path = scratch("z2.col");
    fs::write(&path, dimacs).unwrap();
    let row: Value =
        serde_json::from_str(&ok(&["analyze", path.to_str().unwrap(), "--chi"])).unwrap();
    assert_eq!(row["metrics"]["chi"], 3);
}

#[test]
fn sweep_csv_is_deterministic() {
    let a = ok(&["sweep", "kneser", "--grid", "0,1/3", "--format", "csv"]);
    assert!(a.starts_with("format_version,c,instance,"));
    assert!(a.lines().count() > 2);
    assert_eq!(
        a,
        ok(&["sweep", "kneser", "--grid", "0,1/3", "--format", "csv"])
    );
}

#[test]
fn list_names_everything() {
    let out = ok(&["list"]);
    for name in [
        "kneser",
        "borsuk-hajnal",
        "chistar",
        "paired-vc",
        "tricube",
        "booster",
        "subfree",
    ] {
        assert!(out.contains(name), "{name}");
    }
}
