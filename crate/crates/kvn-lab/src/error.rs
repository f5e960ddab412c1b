//! Crate-wide error type and exit-code mapping for the CLI.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, KvnError>;

#[derive(Debug, Error)]
pub enum KvnError {
    #[error("grid size {0} is not a power of two (nx, nv must be 2^k >= 8)")]
    SizeNotPowerOfTwo(usize),

    #[error("grid size {0} is below the minimum of 8 points per axis")]
    SizeTooSmall(usize),

    #[error("inverted domain bounds on the {axis} axis: min {min} >= max {max}")]
    InvertedBounds {
        axis: &'static str,
        min: f64,
        max: f64,
    },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("wavefunction is in representation {found} but {expected} is required")]
    RepMismatch { expected: String, found: String },

    #[error("{field} = {sigma} is narrower than 4 grid spacings ({min}); widen the packet or refine the grid")]
    PacketTooNarrow { field: &'static str, sigma: f64, min: f64 },

    #[error("packet center on the {axis} axis is closer than 4 sigma to the domain edge; move the center or enlarge the domain")]
    PacketNearBoundary { axis: &'static str },

    #[error("time step must be positive, got {0}")]
    NonPositiveDt(f64),

    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("dense export needs nx*nv <= {max}, grid has {n} points")]
    GridTooLarge { n: usize, max: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("series samples are not uniformly spaced")]
    NonUniformSamples,

    #[error("path velocity deviates from the discrete derivative of position by {max_dev:.3e} (limit {limit:.3e})")]
    KinematicallyInconsistent { max_dev: f64, limit: f64 },

    #[error("tabulated potential has no force-derivative table, required for extended dynamics")]
    MissingForcePrime,

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("expectation value has imaginary part {imag:.3e} above 1e-10; operator is not Hermitian on this state or the representation is wrong")]
    NonHermitianExpectation { imag: f64 },

    #[error("epsilon list must be symmetric about zero and non-empty")]
    BadEpsilonList,

    #[error("deformation window has {window} samples but the path has {path}")]
    WindowLengthMismatch { window: usize, path: usize },

    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl KvnError {
    /// CLI exit code class: 2 for config errors, 3 for numerical-guard violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            KvnError::Config { .. } | KvnError::Json(_) | KvnError::Io(_) => 2,
            _ => 3,
        }
    }
}
