use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kvn_lab::harness::{self, RunKind};

/// Phase-space mechanics lab: unitary Liouville propagation, operator
/// algebra checks, and action stationarity certificates.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Directory for CSV/JSON outputs and the manifest.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Seed for the deformation-window family.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Override the config's time step.
    #[arg(long)]
    dt: Option<f64>,
    /// Override the config's step count.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args)]
struct AcceptArgs {
    /// Directory for the per-criterion reports.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate the phase-space wavefunction and record observables (CSV).
    Evolve(RunArgs),
    /// Integrate the classical or extended characteristic trajectory (CSV).
    Trajectory(RunArgs),
    /// Run the stationarity certificate for both action principles (JSON).
    ActionCheck(RunArgs),
    /// Verify the commutation-relation table on a dense grid (JSON).
    CommutatorCheck(RunArgs),
    /// Verify Heisenberg-picture evolution on a dense grid (JSON).
    HeisenbergCheck(RunArgs),
    /// Run the full acceptance suite; exit 0 only if every criterion passes.
    Accept(AcceptArgs),
}

fn run_kind(kind: RunKind, args: &RunArgs) -> Result<(), kvn_lab::KvnError> {
    let mut config = harness::parse_config(&args.config)?;
    if let Some(dt) = args.dt {
        config.dt = dt;
    }
    if let Some(steps) = args.steps {
        config.steps = steps;
    }
    config.validate_base()?;
    let manifest = harness::run(kind, &config, &args.out_dir, args.seed)?;
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{}: wrote {} to {}",
        kind.name(),
        manifest
            .outputs
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(", "),
        args.out_dir.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<ExitCode, kvn_lab::KvnError> = match &cli.command {
        Command::Evolve(args) => run_kind(RunKind::Evolve, args).map(|_| ExitCode::SUCCESS),
        Command::Trajectory(args) => run_kind(RunKind::Trajectory, args).map(|_| ExitCode::SUCCESS),
        Command::ActionCheck(args) => run_kind(RunKind::ActionCheck, args).map(|_| ExitCode::SUCCESS),
        Command::CommutatorCheck(args) => {
            run_kind(RunKind::CommutatorCheck, args).map(|_| ExitCode::SUCCESS)
        }
        Command::HeisenbergCheck(args) => {
            run_kind(RunKind::HeisenbergCheck, args).map(|_| ExitCode::SUCCESS)
        }
        Command::Accept(args) => harness::run_accept(&args.out_dir, args.seed).map(|outcome| {
            for (report, dt) in &outcome.reports {
                println!("{}  ({dt:.2} s)", report.summary_line());
            }
            println!(
                "acceptance: {} in {:.1} s, reports in {}",
                if outcome.all_passed { "PASS" } else { "FAIL" },
                outcome.total_s,
                args.out_dir.display()
            );
            if outcome.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
