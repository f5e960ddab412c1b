//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line and enforcing the stated tolerances and runtime budgets.
//!
//! The tests serialize on a global mutex so the wall-clock budgets are
//! measured without interference from parallel test threads.

use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use kvn_lab::acceptance::{run_criterion, CriterionReport};

static SERIAL: Mutex<()> = Mutex::new(());

const SEED: u64 = 42;

fn run_and_report(id: u8, budget_s: f64) -> CriterionReport {
    let _guard = SERIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    let start = Instant::now();
    let report = run_criterion(id, SEED);
    let elapsed = start.elapsed().as_secs_f64();
    println!("{}  ({elapsed:.2} s)", report.summary_line());
    for check in &report.checks {
        println!(
            "    [{}] {}: {}",
            if check.passed { "ok" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    assert!(
        elapsed < budget_s,
        "criterion {id} took {elapsed:.1} s (budget {budget_s} s)"
    );
    report
}

#[test]
fn acceptance_01_commutation_relations() {
    let report = run_and_report(1, 5.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_02_liouvillian_hermiticity_and_unitarity() {
    let report = run_and_report(2, 30.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_03_newton_equation_in_expectation() {
    let report = run_and_report(3, 30.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_04_delta_limit_particle_recovery() {
    let report = run_and_report(4, 60.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_05_heisenberg_evolution() {
    let report = run_and_report(5, 10.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_06_hamilton_principle() {
    let report = run_and_report(6, 10.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_07_schwinger_principle() {
    let report = run_and_report(7, 20.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_08_representation_transforms() {
    let report = run_and_report(8, 2.0);
    assert!(report.passed, "{report:#?}");
}

#[test]
fn acceptance_09_extended_dynamics_convergence() {
    let report = run_and_report(9, 10.0);
    assert!(report.passed, "{report:#?}");
}

/// Criterion 10: the `accept` subcommand, run twice with the same seed, must
/// exit 0 within the 120 s budget and produce byte-identical report files.
#[test]
fn acceptance_10_determinism_and_runtime() {
    let _guard = SERIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    let bin = env!("CARGO_BIN_EXE_kvn-lab");
    let dir = tempfile::tempdir().expect("tempdir");
    let out1 = dir.path().join("first");
    let out2 = dir.path().join("second");

    let mut wall = Vec::new();
    for out in [&out1, &out2] {
        let start = Instant::now();
        let status = Command::new(bin)
            .args(["accept", "--seed", "42", "--out-dir"])
            .arg(out)
            .status()
            .expect("spawn accept");
        let elapsed = start.elapsed().as_secs_f64();
        assert!(status.success(), "accept exited with {status:?}");
        assert!(elapsed < 120.0, "accept took {elapsed:.1} s (budget 120 s)");
        wall.push(elapsed);
    }

    let mut compared = 0;
    for entry in std::fs::read_dir(&out1).expect("read out dir") {
        let entry = entry.expect("dir entry");
        let name = entry.file_name();
        if name.to_string_lossy().starts_with("criterion_") {
            let a = std::fs::read(entry.path()).expect("read first report");
            let b = std::fs::read(out2.join(&name)).expect("read second report");
            assert_eq!(a, b, "report {name:?} differs between runs");
            compared += 1;
        }
    }
    assert_eq!(compared, 10, "expected 10 criterion reports");
    println!(
        "PASS  10  determinism and runtime  (runs: {:.1} s, {:.1} s; {compared} reports byte-identical)",
        wall[0], wall[1]
    );
}
