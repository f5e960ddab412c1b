//! Phase-space wavefunctions and the four unitary representations.
//!
//! Builds a Gaussian packet on a periodic (x, v) grid, moves it through the
//! `(x, lambda_v)`, `(lambda_x, v)`, and `(lambda_x, lambda_v)`
//! representations, and shows that the transforms are unitary and exactly
//! invertible. A plane wave in v demonstrates that the transform
//! diagonalizes the velocity-translation generator: it lands on a single
//! wavenumber column.
//!
//! Run with: cargo run --release --example representations

use num_complex::Complex64;

use kvn_lab::{PhaseSpaceGrid, Representation, WaveFunction};

fn main() -> kvn_lab::Result<()> {
    let grid = PhaseSpaceGrid::new(128, 128, -8.0, 8.0, -8.0, 8.0)?;
    println!(
        "grid: {}x{} over [{}, {}) x [{}, {}), dx = {}, dv = {}",
        grid.nx, grid.nv, grid.x_min, grid.x_max, grid.v_min, grid.v_max, grid.dx, grid.dv
    );

    let psi = WaveFunction::gaussian_packet(&grid, 1.0, -0.5, 0.6, 0.6)?;
    println!("packet at (1.0, -0.5), norm = {:.15}", psi.norm());

    for target in [
        Representation::XLv,
        Representation::LxV,
        Representation::LxLv,
    ] {
        let there = psi.transform(target)?;
        let back = there.transform(Representation::XV)?;
        let round_trip = psi
            .data
            .iter()
            .zip(back.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        println!(
            "{target}: norm = {:.15}, round-trip max error = {:.3e}",
            there.norm(),
            round_trip
        );
    }

    // A plane wave exp(i k v) times a Gaussian envelope in x concentrates on
    // the k column of the (x, lambda_v) representation.
    let k_index = 9;
    let k = grid.kv[k_index];
    let mut plane = WaveFunction::from_fn(&grid, |x, v| {
        Complex64::from_polar((-(x * x) / 4.0).exp(), k * v)
    });
    plane.normalize();
    let spectral = plane.transform(Representation::XLv)?;
    let on_column: f64 = spectral
        .data
        .column(k_index)
        .iter()
        .map(|z| z.norm_sqr())
        .sum();
    let total: f64 = spectral.data.iter().map(|z| z.norm_sqr()).sum();
    println!(
        "plane wave exp(i {k:.4} v): fraction of mass on its lambda_v column = {:.15}",
        on_column / total
    );
    Ok(())
}
