//! Heisenberg-picture evolution checked with dense matrices.
//!
//! On a 16x16 grid the Liouvillian is small enough to exponentiate exactly.
//! U(t) = exp(-i L t) is unitary; conjugating the operator set preserves the
//! equal-time commutators [x(t), lambda_x(t)] = [v(t), lambda_v(t)] = i in
//! expectation on interior states; the finite-difference time derivative of
//! x(t) matches i[L, x(t)] as a matrix identity; and for the free particle
//! x(t) = x + t v holds on interior band-limited states.
//!
//! Run with: cargo run --release --example heisenberg_picture

use kvn_lab::characteristics::{free_particle_heisenberg_residual, heisenberg_dense_check};
use kvn_lab::{PhaseSpaceGrid, PotentialSpec};

fn main() -> kvn_lab::Result<()> {
    let grid = PhaseSpaceGrid::new(16, 16, -8.0, 8.0, -8.0, 8.0)?;
    let times = [0.25, 0.5, 1.0];
    let report = heisenberg_dense_check(
        &grid,
        &PotentialSpec::Harmonic { omega: 1.0 },
        1.0,
        &times,
        1e-4,
    )?;

    println!("harmonic Liouvillian on a 16x16 grid:");
    println!(
        "{:>6} {:>16} {:>22} {:>22}",
        "t", "||U'U - I||", "|<[x,lx]> - i| worst", "|<[v,lv]> - i| worst"
    );
    for (i, &t) in times.iter().enumerate() {
        println!(
            "{t:6.2} {:16.3e} {:22.3e} {:22.3e}",
            report.unitarity_defect[i], report.commutator_x_dev[i], report.commutator_v_dev[i]
        );
    }
    println!(
        "Heisenberg equation residual at t = {} (finite difference, delta = {:.0e}):",
        times[0], report.fd_delta
    );
    println!(
        "  ||d(x_t)/dt - i[L, x_t]|| = {:.3e}, ||d(v_t)/dt - i[L, v_t]|| = {:.3e}",
        report.heisenberg_residual_x, report.heisenberg_residual_v
    );

    let free_residual = free_particle_heisenberg_residual(&grid, 1.0)?;
    println!(
        "free particle closed form x(t) = x + t v at t = 1: worst state residual = {free_residual:.3e}"
    );
    Ok(())
}
