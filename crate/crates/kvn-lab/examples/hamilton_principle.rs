//! Hamilton's principle on discretized paths.
//!
//! Evaluates the action integral of m v^2/2 - phi(x) on the physical
//! trajectory and on a deliberately wrong (constant) path, then estimates
//! dW/deps for a family of twenty smooth deformation windows. The physical
//! path is stationary for every window; the constant path is not, and its
//! first variation reproduces the quadrature of eta times the
//! Euler-Lagrange defect.
//!
//! Run with: cargo run --release --example hamilton_principle

use kvn_lab::action::{
    euler_lagrange_residual, first_variation_hamilton, window_family, DEFAULT_EPSILONS,
};
use kvn_lab::characteristics::{classical_trajectory, ClassicalPath};
use kvn_lab::PotentialSpec;

fn main() -> kvn_lab::Result<()> {
    let harmonic = PotentialSpec::Harmonic { omega: 1.0 };
    let h = 1e-3;
    let n = 3142;

    let path = classical_trajectory(1.0, 0.0, &harmonic, 1.0, h, n)?;
    let windows = window_family(&path.t, 20, 42);
    let report = first_variation_hamilton(&path, &harmonic, 1.0, &windows, &DEFAULT_EPSILONS)?;
    println!(
        "on-shell harmonic path over t in [0, {:.3}]: W_H = {:+.6}",
        n as f64 * h,
        report.value
    );
    println!(
        "  max |dW/deps| over {} windows = {:.3e} (tolerance {:.3e}) -> {:?}",
        windows.len(),
        report.max_first_variation(),
        report.tol_stationary,
        report.classification
    );
    println!(
        "  Euler-Lagrange residual of the integrator path: {:.3e}",
        euler_lagrange_residual(&path, &harmonic, 1.0)?
    );

    let constant = ClassicalPath {
        t: (0..=1000).map(|k| k as f64 * h).collect(),
        x: vec![1.0; 1001],
        v: vec![0.0; 1001],
        h,
    };
    let windows = window_family(&constant.t, 20, 42);
    let report =
        first_variation_hamilton(&constant, &harmonic, 1.0, &windows, &DEFAULT_EPSILONS)?;
    println!("constant path x = 1 held for t in [0, 1]: W_H = {:+.6}", report.value);
    println!(
        "  max |dW/deps| = {:.3e} -> {:?} (Euler-Lagrange residual {:.3e})",
        report.max_first_variation(),
        report.classification,
        euler_lagrange_residual(&constant, &harmonic, 1.0)?
    );
    Ok(())
}
