//! Golden and behavioral tests for the command-line front end.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gdof-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn gdof-lab")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {:?}\n{}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn curve_golden_row() {
    let text = stdout(&["curve", "--k", "4", "--alpha", "1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# gdof-lab curve k=4 alpha=1.0"));
    assert_eq!(lines[1], "alpha,d_finite,d_perfect,gap,regime");
    assert_eq!(lines[2], "1.0,0.25,0.5,0.25,Moderate");
}

#[test]
fn curve_schema_and_zero_strength_row() {
    let text = stdout(&[
        "curve",
        "--k",
        "3",
        "--alpha-min",
        "0",
        "--alpha-max",
        "1",
        "--alpha-step",
        "0.5",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "alpha,d_finite,d_perfect,gap,regime");
    assert_eq!(lines[2], "0.0,1.0,1.0,0.0,VeryWeak");
    assert_eq!(lines.len(), 5);
}

#[test]
fn curve_k2_columns_identical() {
    let text = stdout(&[
        "curve",
        "--k",
        "2",
        "--alpha-min",
        "0",
        "--alpha-max",
        "3",
        "--alpha-step",
        "0.01",
    ]);
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1], cells[2], "row {line}");
        assert_eq!(cells[3], "0.0", "row {line}");
    }
}

#[test]
fn json_format_parses_with_same_columns() {
    let text = stdout(&["curve", "--k", "4", "--alpha", "1", "--format", "json"]);
    let body = text.splitn(2, '\n').nth(1).unwrap();
    let rows: serde_json::Value = serde_json::from_str(body).unwrap();
    assert_eq!(rows[0]["alpha"], 1.0);
    assert_eq!(rows[0]["d_finite"], 0.25);
    assert_eq!(rows[0]["d_perfect"], 0.5);
    assert_eq!(rows[0]["gap"], 0.25);
    assert_eq!(rows[0]["regime"], "Moderate");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "k = 4\nalpha = 1.0\nformat = csv\n").unwrap();
    let base = stdout(&["curve", "--config", cfg.to_str().unwrap()]);
    assert!(base.lines().nth(2).unwrap().starts_with("1.0,0.25"));
    // A flag beats the file.
    let overridden = stdout(&["curve", "--config", cfg.to_str().unwrap(), "--alpha", "2"]);
    assert!(overridden.lines().nth(2).unwrap().starts_with("2.0,0.5"));
}

#[test]
fn simulate_gate_and_target_column() {
    // Very strong interference: target column is 1 and the campaign
    // converges easily at the default tolerance.
    let text = stdout(&[
        "simulate",
        "--k",
        "3",
        "--alpha",
        "5",
        "--trials",
        "20",
        "--p-exponents",
        "6,10",
    ]);
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[3], "1.0");
    }

    // A zero tolerance fails the gate (exit code 1) without erroring.
    let out = run(&[
        "simulate",
        "--k",
        "3",
        "--alpha",
        "0.6",
        "--trials",
        "5",
        "--p-exponents",
        "4",
        "--tolerance",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["simulate", "--k", "3", "--trials", "5"]); // missing alpha
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["curve", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lemma2_identical_laws_zero_column() {
    let text = stdout(&[
        "lemma2",
        "--alpha",
        "0.5",
        "--trials",
        "5",
        "--pbar-grid",
        "16,32,64",
        "--law-b",
        "uniform",
    ]);
    for line in text.lines().skip(2).take(3) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[3], "0.0", "row {line}");
    }
}

#[test]
fn plot_is_written_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("curves.svg");
    let args = [
        "curve",
        "--k",
        "3",
        "--alpha-step",
        "0.25",
        "--plot",
        svg_path.to_str().unwrap(),
    ];
    stdout(&args);
    let first = std::fs::read(&svg_path).unwrap();
    assert!(first.starts_with(b"<svg"));
    stdout(&args);
    let second = std::fs::read(&svg_path).unwrap();
    assert_eq!(first, second);
}

#[test]
fn out_files_rerun_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.csv");
    let args = [
        "simulate",
        "--k",
        "2",
        "--alpha",
        "0.75",
        "--trials",
        "8",
        "--p-exponents",
        "4,6",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ];
    run_ok_or_gate(&args);
    let first = std::fs::read(&path).unwrap();
    run_ok_or_gate(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
}

/// Runs a command allowing gate failure (exit 1) but not usage errors.
fn run_ok_or_gate(args: &[&str]) {
    let out = run(args);
    assert!(
        matches!(out.status.code(), Some(0) | Some(1)),
        "unexpected exit: {:?}\n{}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn threads_flag_does_not_change_output() {
    let args = |threads: &'static str| {
        vec![
            "simulate".to_string(),
            "--k".into(),
            "3".into(),
            "--alpha".into(),
            "0.9".into(),
            "--trials".into(),
            "16".into(),
            "--p-exponents".into(),
            "4,8".into(),
            "--threads".into(),
            threads.to_string(),
        ]
    };
    let one = bin().args(args("1")).output().unwrap();
    let two = bin().args(args("2")).output().unwrap();
    assert_eq!(one.stdout, two.stdout);
}
