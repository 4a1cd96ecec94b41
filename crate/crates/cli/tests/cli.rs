use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"))
        .join("cli")
        .join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn multivendor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multivendor"))
        .args(args)
        .output()
        .unwrap()
}

fn write_input(dir: &Path, text: &str) -> String {
    let path = dir.join("input.json");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_worked_instance_json() {
    let input = scenario("two-by-two.json");
    let out = multivendor(&["solve", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "OPTIMAL");
    assert_eq!(report["z"], 15.0);
    assert_eq!(report["shipments"].as_array().unwrap().len(), 2);
    assert_eq!(report["config"]["seed"], 0);
    assert_eq!(report["config"]["trials"], 10_000);
    assert_eq!(report["config"]["version"], multivendor_core::VERSION);
}

#[test]
fn infeasible_solve_exits_2() {
    let input = scenario("short-supply.json");
    let out = multivendor(&[
        "solve",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "status,z,supplier,item,demand,units\nINFEASIBLE,,,,,\n"
    );
}

#[test]
fn validate_reports_negative_cost() {
    let dir = scratch("negative");
    let text = fs::read_to_string(scenario("two-by-two.json"))
        .unwrap()
        .replacen("\"cost\": 3", "\"cost\": -3", 1);
    let input = write_input(&dir, &text);
    let out = multivendor(&["validate", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("nonnegativity"));
    // the solver refuses the same file
    assert_eq!(
        multivendor(&["solve", "--input", &input]).status.code(),
        Some(1)
    );
}

#[test]
fn validate_accepts_bundled_files() {
    for f in fs::read_dir(scenario("")).unwrap() {
        let path = f.unwrap().path();
        let out = multivendor(&["validate", "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
        assert_eq!(out.stdout, b"valid\n");
    }
}

#[test]
fn parse_errors_exit_1() {
    let dir = scratch("parse");
    for text in [
        "{",
        r#"{"suppliers": [], "items": [], "demands": [], "extra": 1}"#,
    ] {
        let input = write_input(&dir, text);
        let out = multivendor(&["solve", "--input", &input]);
        assert_eq!(out.status.code(), Some(1), "{text}");
        assert!(!out.stderr.is_empty());
    }
    let out = multivendor(&["solve", "--input", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_needs_disruption_section() {
    let input = scenario("two-by-two.json");
    let out = multivendor(&["simulate", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("disruption"));
}

#[test]
fn bad_flags_are_usage_errors() {
    let input = scenario("dual-spine.json");
    let input = input.to_str().unwrap();
    assert_ne!(
        multivendor(&["simulate", "--input", input, "--trials", "0"])
            .status
            .code(),
        Some(0)
    );
    assert_ne!(
        multivendor(&["frobnicate", "--input", input]).status.code(),
        Some(0)
    );
    let out = multivendor(&["sweep", "--input", input, "--min-subset-size", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_reports_get_meta_sidecar() {
    let dir = scratch("sidecar");
    let input = scenario("dual-spine.json");
    let output = dir.join("costs.csv");
    let out = multivendor(&[
        "simulate",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "csv",
        "--trials",
        "100",
        "--periods",
        "2",
        "--seed",
        "9",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(&output).unwrap();
    assert!(csv.starts_with("trial,cost\n0,"));
    assert_eq!(csv.lines().count(), 101);
    let meta: Value =
        serde_json::from_slice(&fs::read(dir.join("costs.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["config"]["seed"], 9);
    assert_eq!(meta["config"]["trials"], 100);
    assert_eq!(meta["config"]["periods"], 2);
    assert_eq!(meta["summary"]["trials"], 100);
}

#[test]
fn seed_changes_simulation() {
    let input = scenario("dual-spine.json");
    let run = |seed: &str| {
        multivendor(&[
            "simulate",
            "--input",
            input.to_str().unwrap(),
            "--trials",
            "200",
            "--seed",
            seed,
        ])
        .stdout
    };
    assert_eq!(run("1"), run("1"));
    assert_ne!(run("1"), run("2"));
}

#[test]
fn sweep_json_marginal_values() {
    let input = scenario("two-by-two.json");
    let out = multivendor(&["sweep", "--input", input.to_str().unwrap()]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["baseline_z"], 15.0);
    assert_eq!(report["marginal_value"]["s0"], 20.0);
    assert_eq!(report["marginal_value"]["s1"], 0.0);
    assert_eq!(report["entries"][1]["z"], 35.0);
}

#[test]
fn payoff_curve_csv() {
    let input = scenario("hft-latency-race.json");
    let out = multivendor(&[
        "payoff",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "csv",
        "--trials",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("sigma,expected_payoff,mc_stderr"));
    assert_eq!(lines.next(), Some("0,0,0"));
    assert_eq!(lines.count(), 5);
}
