//! Several particles with per-particle masses and summed forces.
//!
//! The extended dynamics generalizes particle-wise: each particle carries
//! its own (x, v, lambda_x, lambda_v) quadruple, mass, and a list of
//! potentials whose forces add. The Schwinger action becomes the sum of the
//! per-particle integrands and still vanishes on shell.
//!
//! Run with: cargo run --release --example multi_particle

use kvn_lab::action::schwinger_action_multi;
use kvn_lab::characteristics::{multi_extended_trajectory, ParticleSpec};
use kvn_lab::PotentialSpec;

fn main() -> kvn_lab::Result<()> {
    let particles = vec![
        ParticleSpec {
            mass: 1.0,
            potentials: vec![PotentialSpec::Harmonic { omega: 1.0 }],
            x0: 1.0,
            v0: 0.0,
            lambda_x0: 0.0,
            lambda_v0: 1.0,
        },
        ParticleSpec {
            mass: 2.5,
            potentials: vec![
                PotentialSpec::Quartic { a4: 0.5 },
                PotentialSpec::Harmonic { omega: 0.7 },
            ],
            x0: -0.5,
            v0: 0.4,
            lambda_x0: 1.0,
            lambda_v0: 0.0,
        },
    ];

    let h = 1e-3;
    let n = 2000;
    let paths = multi_extended_trajectory(&particles, h, n)?;
    println!("two particles integrated to t = {}:", h * n as f64);
    for (i, (p, path)) in particles.iter().zip(paths.iter()).enumerate() {
        println!(
            "  particle {i}: m = {}, {} potential(s), x(T) = {:+.6}, v(T) = {:+.6}, lambda_v(T) = {:+.6}",
            p.mass,
            p.potentials.len(),
            path.x[n],
            path.v[n],
            path.lambda_v[n]
        );
    }
    let w = schwinger_action_multi(&paths, &particles)?;
    println!("summed Schwinger action on shell: W_S = {w:+.3e}");
    Ok(())
}
