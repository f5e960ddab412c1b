//! The hidden-variable operator algebra, verified as dense matrices.
//!
//! Exports x, v, lambda_x, lambda_v on a tiny grid and checks the
//! commutation table: six commutators vanish as matrices, while the
//! canonical pairs [x, lambda_x] and [v, lambda_v] equal i in expectation on
//! band-limited interior states (an exact matrix identity is impossible in
//! finite dimension because a commutator is traceless). Also evaluates the
//! acceleration observable i[L, v], which acts as F(x)/m on interior states.
//!
//! Run with: cargo run --release --example commutators

use kvn_lab::characteristics::interior_test_states;
use kvn_lab::harness::commutator_report;
use kvn_lab::observables::expectation;
use kvn_lab::operators::{acceleration_observable, OperatorId};
use kvn_lab::{PhaseSpaceGrid, PotentialSpec};

fn main() -> kvn_lab::Result<()> {
    let grid = PhaseSpaceGrid::new(16, 16, -8.0, 8.0, -8.0, 8.0)?;
    let report = commutator_report(&grid, 12)?;

    println!("zero commutators (matrix max-norm):");
    for line in &report.zero_commutators {
        println!("  {:24} {:.3e}", line.pair, line.max_abs);
    }
    println!("canonical commutators (worst |<.> - i| over {} states):", 12);
    for line in &report.canonical_commutators {
        println!("  {:24} {:.3e}", line.pair, line.worst_dev_from_i);
    }

    let quartic = PotentialSpec::Quartic { a4: 1.0 };
    let acc = acceleration_observable(&grid, &quartic, 1.0)?;
    println!("acceleration observable i[L, v] for {}:", quartic.label());
    for phi in interior_test_states(&grid, 3) {
        let a = acc.expectation(&phi)?;
        let f = expectation(&OperatorId::Force(quartic.clone()), &phi)?;
        println!(
            "  <i[L, v]> = {:+.9e}, <F(x)>/m = {:+.9e}, diff = {:.3e}",
            a.re,
            f,
            (a.re - f).abs()
        );
    }
    println!("table passed: {}", report.passed);
    Ok(())
}
