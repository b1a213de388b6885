//! End-to-end checks of the command-line surface: CSV contents, manifests,
//! reproducibility and exit codes.

use std::path::Path;
use std::process::Command;

fn fockcat() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fockcat"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {path:?}: {e}"))
}

#[test]
fn fig4b_contains_the_balanced_qutrit_point() {
    let dir = tempfile::tempdir().unwrap();
    let status = fockcat()
        .args(["figure", "fig4b", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());

    let csv = read(&dir.path().join("fig4b.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "R,E_S");
    let row = lines
        .find(|l| l.starts_with("0.5,"))
        .expect("R = 0.5 row present");
    let e_s: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((e_s - 1.5).abs() < 1e-9, "E_S at R=0.5 is {e_s}");

    let manifest = read(&dir.path().join("fig4b_manifest.json"));
    let parsed: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(parsed["data_file"], "fig4b.csv");
    assert_eq!(parsed["command"], "figure fig4b");
    assert!(parsed["timestamp"].as_str().unwrap().contains('T'));
}

#[test]
fn fig2_argmax_at_zero_displacement() {
    let dir = tempfile::tempdir().unwrap();
    let status = fockcat()
        .args(["figure", "fig2", "--lambda", "0.01", "--R", "0.5", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(&dir.path().join("fig2.csv"));
    let mut best = (f64::NAN, f64::MIN);
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let alpha: f64 = cells[1].parse().unwrap();
        let e: f64 = cells[2].parse().unwrap();
        if e > best.1 {
            best = (alpha, e);
        }
    }
    assert!(best.0.abs() < 1e-9, "argmax at {}", best.0);
    assert!((best.1 - 1.0).abs() < 0.005);
}

#[test]
fn rerun_is_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let status = fockcat()
            .args(["figure", "fig4a", "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        read(&dir_a.path().join("fig4a.csv")),
        read(&dir_b.path().join("fig4a.csv"))
    );
}

#[test]
fn run_single_ideal_reports_one_ebit() {
    let output = fockcat()
        .args([
            "run", "--scheme", "single", "--model", "ideal", "--lambda", "0.01", "--R", "0.5",
            "--alpha", "0",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let e_line = stdout
        .lines()
        .find(|l| l.starts_with("E_S = "))
        .expect("E_S line");
    let value: f64 = e_line
        .trim_start_matches("E_S = ")
        .trim_end_matches(" bits")
        .parse()
        .unwrap();
    assert!((value - 1.0).abs() < 0.005, "E_S = {value}");
}

#[test]
fn run_double_realistic_near_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let output = fockcat()
        .args([
            "run", "--scheme", "double", "--model", "realistic", "--lambda", "0.2", "--Rs",
            "0.1", "--eta", "1", "--alpha", "0.316", "--beta", "-0.316", "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("run_report.json"))).unwrap();
    let e_n = report["E_N"].as_f64().unwrap();
    let p2 = report["P2"].as_f64().unwrap();
    assert!(e_n > 1.3 && e_n < 1.45, "E_N = {e_n}");
    assert!(p2 > 1e-6 && p2 < 1e-4, "P2 = {p2}");
    assert!(report["branches"].as_array().unwrap().len() > 1);
    assert!(dir.path().join("run_manifest.json").exists());
}

#[test]
fn invalid_efficiency_is_a_validation_error() {
    let output = fockcat()
        .args(["run", "--scheme", "single", "--model", "realistic", "--eta", "1.5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("detector efficiency"), "stderr: {stderr}");
}

#[test]
fn unknown_figure_is_a_validation_error() {
    let output = fockcat().args(["figure", "fig9"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn truncation_breach_exits_with_health_code() {
    let output = fockcat()
        .args([
            "run", "--scheme", "single", "--model", "realistic", "--lambda", "0.6", "--nmax",
            "4",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("FLAGGED"), "stdout: {stdout}");
}
