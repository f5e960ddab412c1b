//! Config-driven runs: scenario ingestion, reproducible outputs, manifests.
//!
//! Every run writes its data files plus a `manifest.json` listing them. With
//! a fixed (config, seed) pair the data files (CSV series, JSON reports) are
//! byte-identical across runs; the manifest itself carries wall-clock timing
//! and is the one non-reproducible artifact.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::acceptance::{self, CriterionReport};
use crate::action::{stationarity_certificate, CertificateScenario};
use crate::characteristics::{classical_trajectory, extended_trajectory, heisenberg_dense_check};
use crate::error::Result;
use crate::linalg;
use crate::observables::newton_residual;
use crate::operators::{commutator, to_dense, OperatorId};
use crate::propagator::{build_plan, evolve};
use crate::scenario::ScenarioConfig;

/// Read, deserialize, and validate a scenario file. Schema errors name the
/// offending field; guard violations carry remedy hints. Packet-width
/// guards are applied by the subcommands that construct packets, so configs
/// meant for the dense operator checks may describe grids too small to host
/// a valid packet.
pub fn parse_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path)?;
    let config: ScenarioConfig = serde_json::from_str(&text)?;
    config.validate_base()?;
    Ok(config)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Stable hash of the canonical config JSON and the seed.
pub fn scenario_hash(config: &ScenarioConfig, seed: u64) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    let mut bytes = json.into_bytes();
    bytes.extend_from_slice(&seed.to_le_bytes());
    format!("{:016x}", fnv1a64(&bytes))
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub scenario_hash: String,
    pub seed: u64,
    pub wall_clock_s: f64,
    pub warnings: Vec<String>,
    pub outputs: Vec<String>,
    pub config: ScenarioConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunKind {
    Evolve,
    Trajectory,
    ActionCheck,
    CommutatorCheck,
    HeisenbergCheck,
}

impl RunKind {
    pub fn name(self) -> &'static str {
        match self {
            RunKind::Evolve => "evolve",
            RunKind::Trajectory => "trajectory",
            RunKind::ActionCheck => "action-check",
            RunKind::CommutatorCheck => "commutator-check",
            RunKind::HeisenbergCheck => "heisenberg-check",
        }
    }
}

fn write_output(
    out_dir: &Path,
    name: &str,
    contents: &str,
    outputs: &mut Vec<String>,
) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join(name), contents)?;
    outputs.push(name.to_string());
    Ok(())
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub grid: [usize; 2],
    pub zero_commutators: Vec<ZeroCommutatorLine>,
    pub canonical_commutators: Vec<CanonicalCommutatorLine>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroCommutatorLine {
    pub pair: String,
    pub max_abs: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalCommutatorLine {
    pub pair: String,
    pub states: usize,
    pub worst_dev_from_i: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// The commutation-relation table on a dense-exportable grid: the six
/// vanishing commutators as matrices, the two canonical ones in expectation
/// on interior Gaussian states.
pub fn commutator_report(
    grid: &crate::grid::PhaseSpaceGrid,
    n_states: usize,
) -> Result<CommutatorReport> {
    let x = to_dense(&OperatorId::X, grid)?;
    let v = to_dense(&OperatorId::V, grid)?;
    let lx = to_dense(&OperatorId::LambdaX, grid)?;
    let lv = to_dense(&OperatorId::LambdaV, grid)?;

    let zero_pairs = [
        (&x, &x),
        (&v, &v),
        (&x, &v),
        (&x, &lv),
        (&v, &lx),
        (&lx, &lv),
    ];
    let tol_zero = 1e-12;
    let mut zero_commutators = Vec::new();
    for (a, b) in zero_pairs {
        let c = commutator(a, b)?;
        let max_abs = linalg::max_abs(&c.matrix);
        zero_commutators.push(ZeroCommutatorLine {
            pair: c.label,
            max_abs,
            tolerance: tol_zero,
            passed: max_abs < tol_zero,
        });
    }

    let states = crate::characteristics::interior_test_states(grid, n_states);
    let tol_canon = 1e-6;
    let mut canonical_commutators = Vec::new();
    for (a, b) in [(&x, &lx), (&v, &lv)] {
        let c = commutator(a, b)?;
        let mut worst = 0.0f64;
        for s in &states {
            let e = c.expectation(s)?;
            worst = worst.max((e - num_complex::Complex64::i()).norm());
        }
        canonical_commutators.push(CanonicalCommutatorLine {
            pair: c.label,
            states: states.len(),
            worst_dev_from_i: worst,
            tolerance: tol_canon,
            passed: worst < tol_canon,
        });
    }

    let passed = zero_commutators.iter().all(|l| l.passed)
        && canonical_commutators.iter().all(|l| l.passed);
    Ok(CommutatorReport {
        grid: [grid.nx, grid.nv],
        zero_commutators,
        canonical_commutators,
        passed,
    })
}

/// Execute one subcommand against a validated config. Returns the manifest,
/// which is also written to `out_dir/manifest.json`.
pub fn run(
    kind: RunKind,
    config: &ScenarioConfig,
    out_dir: &Path,
    seed: u64,
) -> Result<RunManifest> {
    let start = Instant::now();
    let mut outputs = Vec::new();
    let mut warnings = Vec::new();
    let hash = scenario_hash(config, seed);

    match kind {
        RunKind::Evolve => {
            let grid = config.build_grid()?;
            let psi0 = config.build_packet(&grid)?;
            let plan = build_plan(&grid, &config.potential, config.mass, config.dt)?;
            if let Some(w) = &plan.guard_warning {
                warnings.push(w.clone());
            }
            let (_, series) = evolve(&psi0, &plan, config.steps, config.record_every)?;
            if series.boundary_touched {
                warnings.push(
                    "packet mass reached the domain edge during the run; observables after \
                     that point wrap around the periodic domain"
                        .into(),
                );
            }
            if let Ok(r) = newton_residual(&series) {
                if !r.is_finite() {
                    warnings.push("newton residual is not finite".into());
                }
            }
            write_output(out_dir, "series.csv", &series.to_csv(), &mut outputs)?;
        }
        RunKind::Trajectory => {
            let n = config.steps;
            let h = config.dt;
            let extended = config.initial.lambda_x0.is_some() || config.initial.lambda_v0.is_some();
            if extended {
                let p = extended_trajectory(
                    config.initial.x0,
                    config.initial.v0,
                    config.lambda_x0(),
                    config.lambda_v0(),
                    &config.potential,
                    config.mass,
                    h,
                    n,
                )?;
                write_output(out_dir, "trajectory.csv", &p.to_csv(), &mut outputs)?;
            } else {
                let p = classical_trajectory(
                    config.initial.x0,
                    config.initial.v0,
                    &config.potential,
                    config.mass,
                    h,
                    n,
                )?;
                write_output(out_dir, "trajectory.csv", &p.to_csv(), &mut outputs)?;
            }
        }
        RunKind::ActionCheck => {
            let mut sc = CertificateScenario::new(
                config.potential.clone(),
                config.initial.x0,
                config.initial.v0,
                config.t_final(),
            );
            sc.mass = config.mass;
            sc.lambda_x0 = config.lambda_x0();
            sc.lambda_v0 = config.lambda_v0();
            sc.h = config.dt;
            sc.seed = seed;
            let mut cert = stationarity_certificate(&sc)?;
            cert.scenario_hash = Some(hash.clone());
            write_output(
                out_dir,
                "action_certificate.json",
                &to_pretty_json(&cert),
                &mut outputs,
            )?;
        }
        RunKind::CommutatorCheck => {
            let grid = config.build_grid()?;
            let report = commutator_report(&grid, 12)?;
            write_output(
                out_dir,
                "commutators.json",
                &to_pretty_json(&report),
                &mut outputs,
            )?;
        }
        RunKind::HeisenbergCheck => {
            let grid = config.build_grid()?;
            let report = heisenberg_dense_check(
                &grid,
                &config.potential,
                config.mass,
                &[0.25, 0.5, 1.0],
                1e-4,
            )?;
            write_output(
                out_dir,
                "heisenberg.json",
                &to_pretty_json(&report),
                &mut outputs,
            )?;
        }
    }

    outputs.push("manifest.json".to_string());
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        scenario_hash: hash,
        seed,
        wall_clock_s: start.elapsed().as_secs_f64(),
        warnings,
        outputs,
        config: config.clone(),
    };
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("manifest.json"), to_pretty_json(&manifest))?;
    Ok(manifest)
}

/// Outcome of the `accept` subcommand.
pub struct AcceptOutcome {
    pub reports: Vec<(CriterionReport, f64)>,
    pub all_passed: bool,
    pub total_s: f64,
    pub report_paths: Vec<PathBuf>,
}

/// Run the full acceptance suite, writing one deterministic JSON report per
/// criterion plus a timing summary.
pub fn run_accept(out_dir: &Path, seed: u64) -> Result<AcceptOutcome> {
    let start = Instant::now();
    let reports = acceptance::run_all(seed);
    fs::create_dir_all(out_dir)?;
    let mut report_paths = Vec::new();
    for (report, _) in &reports {
        let path = out_dir.join(format!("criterion_{:02}.json", report.id));
        fs::write(&path, to_pretty_json(report))?;
        report_paths.push(path);
    }
    let all_passed = reports.iter().all(|(r, _)| r.passed);
    let total_s = start.elapsed().as_secs_f64();

    #[derive(Serialize)]
    struct SummaryLine<'a> {
        id: u8,
        name: &'a str,
        passed: bool,
        runtime_s: f64,
    }
    #[derive(Serialize)]
    struct Summary<'a> {
        tool_version: &'a str,
        seed: u64,
        all_passed: bool,
        total_s: f64,
        criteria: Vec<SummaryLine<'a>>,
    }
    let summary = Summary {
        tool_version: env!("CARGO_PKG_VERSION"),
        seed,
        all_passed,
        total_s,
        criteria: reports
            .iter()
            .map(|(r, dt)| SummaryLine {
                id: r.id,
                name: &r.name,
                passed: r.passed,
                runtime_s: *dt,
            })
            .collect(),
    };
    fs::write(
        out_dir.join("acceptance_summary.json"),
        to_pretty_json(&summary),
    )?;

    Ok(AcceptOutcome {
        reports,
        all_passed,
        total_s,
        report_paths,
    })
}
