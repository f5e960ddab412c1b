//! Operational classical mechanics on a phase-space Hilbert space.
//!
//! Classical states are complex wavefunctions psi(x, v) whose squared modulus
//! is the phase-space probability density. Time evolution is generated by the
//! Hermitian Liouvillian `L = v*lambda_x + (F(x)/m)*lambda_v`, where
//! `lambda_x = -i d/dx` and `lambda_v = -i d/dv` are the translation
//! generators conjugate to position and velocity. The crate provides:
//!
//! - periodic phase-space grids, Gaussian packets, and the four unitary
//!   representations reachable by axis-wise Fourier transforms ([`grid`],
//!   [`wavefunction`]);
//! - the operator algebra (x, v, lambda_x, lambda_v, Liouvillian) as actions
//!   on wavefunctions plus dense-matrix export at tiny grid sizes for
//!   commutator and Hermiticity checks ([`operators`]);
//! - an exactly-unitary Strang split-step propagator for the Liouville
//!   equation ([`propagator`]) and observable extraction ([`observables`]);
//! - the c-number characteristic dynamics: Newton trajectories, the extended
//!   (x, v, lambda_x, lambda_v) system, and dense Heisenberg-picture checks
//!   ([`characteristics`]);
//! - Hamilton and Schwinger action functionals on discretized paths with
//!   numerical first-variation machinery and a stationarity certificate
//!   ([`action`]);
//! - a config-driven run harness with CSV/JSON persistence and the
//!   acceptance suite behind the `kvn-lab` binary ([`harness`],
//!   [`acceptance`]).
//!
//! The runnable `examples/` directory walks through each capability.

pub mod acceptance;
pub mod action;
pub mod characteristics;
pub mod error;
mod fft;
pub mod grid;
pub mod harness;
pub mod linalg;
pub mod observables;
pub mod operators;
pub mod potential;
pub mod propagator;
pub mod scenario;
pub mod wavefunction;

pub use error::{KvnError, Result};
pub use grid::PhaseSpaceGrid;
pub use potential::PotentialSpec;
pub use wavefunction::{Representation, WaveFunction};
