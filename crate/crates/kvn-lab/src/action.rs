//! Action functionals on discretized paths and their numerical first
//! variations.
//!
//! Two functionals are evaluated:
//!
//! - the Hamiltonian action, the time integral of `m v^2 / 2 - phi(x)` along
//!   a kinematically consistent `(x, v)` path;
//! - the Schwinger action, the time integral of
//!   `lambda_x (dx/dt - v) + lambda_v (dv/dt - F(x)/m)` along an extended
//!   path. The integrand vanishes identically on solutions, and a reduced
//!   form keeping only the `lambda_v` term is exposed for paths that already
//!   satisfy `dx/dt = v`.
//!
//! Deformations shift `x -> x + eps*eta`, `v -> v + eps*eta_dot` with a
//! smooth window `eta` vanishing together with its derivative at both
//! endpoints; lambda components are left untouched. The first variation
//! `dW/deps` is estimated by central differences over a symmetric list of
//! eps values, and a path is classified stationary when every window in the
//! family gives `|dW/deps|` below a scale-aware tolerance.
//!
//! Stationarity of the Schwinger action under these deformations is
//! equivalent to the multiplier equation `d2(lambda_v)/dt2 = (F'/m) lambda_v`
//! holding along the path. An acceleration bias therefore does not show up
//! in the Schwinger first variation when the multipliers stay consistent;
//! it shows up in the value of the action itself, which is zero on shell and
//! grows linearly with the bias. The certificate reports both diagnostics.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characteristics::{
    biased_trajectory, classical_trajectory, rk4_extended_with_bias, ClassicalPath, ExtendedPath,
};
use crate::error::{KvnError, Result};
use crate::potential::PotentialSpec;

/// A smooth deformation window sampled on the path's time nodes, with its
/// analytic derivative. Endpoint values and endpoint derivatives vanish.
#[derive(Debug, Clone)]
pub struct VariationSpec {
    pub label: String,
    pub eta: Vec<f64>,
    pub eta_dot: Vec<f64>,
}

impl VariationSpec {
    /// Build from samples; the derivative is filled by the same high-order
    /// differencing used for path derivatives.
    pub fn from_samples(label: impl Into<String>, t: &[f64], eta: Vec<f64>) -> Result<Self> {
        if eta.len() != t.len() {
            return Err(KvnError::WindowLengthMismatch {
                window: eta.len(),
                path: t.len(),
            });
        }
        let h = t[1] - t[0];
        let eta_dot = derivative(&eta, h);
        let spec = Self {
            label: label.into(),
            eta,
            eta_dot,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let scale = self
            .eta
            .iter()
            .fold(0.0f64, |m, &e| m.max(e.abs()))
            .max(1e-300);
        let n = self.eta.len();
        let ends_ok = self.eta[0].abs() <= 1e-12 * scale
            && self.eta[n - 1].abs() <= 1e-12 * scale
            && self.eta_dot[0].abs() <= 1e-9 * scale
            && self.eta_dot[n - 1].abs() <= 1e-9 * scale;
        if !ends_ok {
            return Err(KvnError::NonFinite(
                "variation window must vanish with its derivative at both endpoints",
            ));
        }
        Ok(())
    }
}

/// Default symmetric epsilon list for first variations.
pub const DEFAULT_EPSILONS: [f64; 4] = [1e-3, -1e-3, 1e-4, -1e-4];

/// The default deformation family on the nodes `t`: raised-cosine-squared
/// (sin^4) windows times low-order polynomials, then seeded band-limited
/// windows. All windows are normalized to unit peak amplitude.
pub fn window_family(t: &[f64], count: usize, seed: u64) -> Vec<VariationSpec> {
    assert!(t.len() >= 2, "need at least two nodes");
    let t0 = t[0];
    let span = t[t.len() - 1] - t0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);

    // Windows built on sin^6 (and sin^4 envelopes below) so that several
    // endpoint derivatives vanish; the Schwinger integrand differentiates
    // the window twice, and the trapezoidal quadrature would otherwise pick
    // up an O(h^2) boundary term from the surviving derivatives.
    let deterministic: [(&str, fn(f64) -> (f64, f64)); 4] = [
        ("sin6", |tau| {
            let s = (std::f64::consts::PI * tau).sin();
            let c = (std::f64::consts::PI * tau).cos();
            (s.powi(6), 6.0 * std::f64::consts::PI * s.powi(5) * c)
        }),
        ("sin6*(tau-1/2)", |tau| {
            let pi = std::f64::consts::PI;
            let s = (pi * tau).sin();
            let c = (pi * tau).cos();
            let p = tau - 0.5;
            (s.powi(6) * p, 6.0 * pi * s.powi(5) * c * p + s.powi(6))
        }),
        ("sin6*(tau-1/2)^2", |tau| {
            let pi = std::f64::consts::PI;
            let s = (pi * tau).sin();
            let c = (pi * tau).cos();
            let p = tau - 0.5;
            (
                s.powi(6) * p * p,
                6.0 * pi * s.powi(5) * c * p * p + 2.0 * s.powi(6) * p,
            )
        }),
        ("sin6*cos(2 pi tau)", |tau| {
            let pi = std::f64::consts::PI;
            let s = (pi * tau).sin();
            let c = (pi * tau).cos();
            let q = (2.0 * pi * tau).cos();
            let dq = -2.0 * pi * (2.0 * pi * tau).sin();
            (s.powi(6) * q, 6.0 * pi * s.powi(5) * c * q + s.powi(6) * dq)
        }),
    ];

    for (label, f) in deterministic.iter().take(count) {
        let mut eta = Vec::with_capacity(t.len());
        let mut eta_dot = Vec::with_capacity(t.len());
        for &tt in t {
            let tau = (tt - t0) / span;
            let (e, de) = f(tau);
            eta.push(e);
            eta_dot.push(de / span);
        }
        normalize_window(&mut eta, &mut eta_dot);
        out.push(VariationSpec {
            label: (*label).into(),
            eta,
            eta_dot,
        });
    }

    let modes = 5usize;
    while out.len() < count {
        let coeffs: Vec<f64> = (0..modes).map(|_| rng.random_range(-1.0..1.0)).collect();
        let pi = std::f64::consts::PI;
        let mut eta = Vec::with_capacity(t.len());
        let mut eta_dot = Vec::with_capacity(t.len());
        for &tt in t {
            let tau = (tt - t0) / span;
            let s = (pi * tau).sin();
            let c = (pi * tau).cos();
            let s4 = s.powi(4);
            let ds4 = 4.0 * pi * s.powi(3) * c;
            let mut sum = 0.0;
            let mut dsum = 0.0;
            for (k, &ck) in coeffs.iter().enumerate() {
                let kk = (k + 1) as f64;
                sum += ck * (kk * pi * tau).sin();
                dsum += ck * kk * pi * (kk * pi * tau).cos();
            }
            eta.push(s4 * sum);
            eta_dot.push((ds4 * sum + s4 * dsum) / span);
        }
        normalize_window(&mut eta, &mut eta_dot);
        out.push(VariationSpec {
            label: format!("band-limited #{}", out.len() - deterministic.len().min(count)),
            eta,
            eta_dot,
        });
    }
    out
}

fn normalize_window(eta: &mut [f64], eta_dot: &mut [f64]) {
    let peak = eta.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
    if peak > 0.0 {
        let s = 1.0 / peak;
        eta.iter_mut().for_each(|e| *e *= s);
        eta_dot.iter_mut().for_each(|e| *e *= s);
    }
}

/// Fourth-order finite-difference derivative of uniformly sampled data
/// (falls back to lower order on very short inputs).
pub fn derivative(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut d = vec![0.0; n];
    if n < 2 {
        return d;
    }
    if n < 5 {
        d[0] = (y[1] - y[0]) / h;
        d[n - 1] = (y[n - 1] - y[n - 2]) / h;
        for i in 1..n - 1 {
            d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
        }
        return d;
    }
    let c = 1.0 / (12.0 * h);
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) * c;
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) * c;
    for i in 2..n - 2 {
        d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) * c;
    }
    d[n - 2] = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] - y[n - 5]) * c;
    d[n - 1] = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4]
        + 3.0 * y[n - 5])
        * c;
    d
}

fn trapezoid(f: &[f64], h: f64) -> f64 {
    let n = f.len();
    if n < 2 {
        return 0.0;
    }
    let interior: f64 = f[1..n - 1].iter().sum();
    h * (interior + 0.5 * (f[0] + f[n - 1]))
}

/// Time integral of `m v^2 / 2 - phi(x)` along the path.
///
/// The path must be kinematically consistent: the discrete derivative of x
/// must match v within `1e-6 * (1 + max|v|)`.
pub fn hamilton_action(path: &ClassicalPath, potential: &PotentialSpec, mass: f64) -> Result<f64> {
    let n = path.len();
    if n < 2 {
        return Err(KvnError::TooFewSamples { needed: 2, got: n });
    }
    let xdot = derivative(&path.x, path.h);
    let v_scale = path.v.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let limit = 1e-6 * (1.0 + v_scale);
    let max_dev = xdot
        .iter()
        .zip(path.v.iter())
        .map(|(d, v)| (d - v).abs())
        .fold(0.0f64, f64::max);
    if max_dev > limit {
        return Err(KvnError::KinematicallyInconsistent { max_dev, limit });
    }
    let integrand: Vec<f64> = path
        .x
        .iter()
        .zip(path.v.iter())
        .map(|(&x, &v)| 0.5 * mass * v * v - potential.phi(x))
        .collect();
    Ok(trapezoid(&integrand, path.h))
}

/// Max over interior nodes of `|m * (discrete dv/dt) - F(x)|`, the
/// Euler-Lagrange defect of the Lagrangian `m v^2/2 - phi`.
pub fn euler_lagrange_residual(
    path: &ClassicalPath,
    potential: &PotentialSpec,
    mass: f64,
) -> Result<f64> {
    let n = path.len();
    if n < 3 {
        return Err(KvnError::TooFewSamples { needed: 3, got: n });
    }
    let mut worst = 0.0f64;
    for i in 1..n - 1 {
        let dv = (path.v[i + 1] - path.v[i - 1]) / (2.0 * path.h);
        let r = (mass * dv - potential.force(path.x[i])).abs();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Evaluation mode for the Schwinger action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchwingerForm {
    /// `lambda_x (dx/dt - v) + lambda_v (dv/dt - F/m)`, valid on any path.
    Full,
    /// `lambda_v (dv/dt - F/m)` only; equals the full form when the path
    /// satisfies `dx/dt = v`.
    Reduced,
}

/// Time integral of the Schwinger integrand along an extended path. Path
/// derivatives come from fourth-order differencing, so on-shell paths give
/// zero to the integrator's accuracy.
pub fn schwinger_action(
    epath: &ExtendedPath,
    potential: &PotentialSpec,
    mass: f64,
    form: SchwingerForm,
) -> Result<f64> {
    let n = epath.len();
    if n < 2 {
        return Err(KvnError::TooFewSamples { needed: 2, got: n });
    }
    let vdot = derivative(&epath.v, epath.h);
    let integrand: Vec<f64> = match form {
        SchwingerForm::Full => {
            let xdot = derivative(&epath.x, epath.h);
            (0..n)
                .map(|i| {
                    epath.lambda_x[i] * (xdot[i] - epath.v[i])
                        + epath.lambda_v[i] * (vdot[i] - potential.force(epath.x[i]) / mass)
                })
                .collect()
        }
        SchwingerForm::Reduced => (0..n)
            .map(|i| epath.lambda_v[i] * (vdot[i] - potential.force(epath.x[i]) / mass))
            .collect(),
    };
    Ok(trapezoid(&integrand, epath.h))
}

/// Schwinger action for several independent particles with per-particle
/// masses and summed forces: the sum over particles of the single-particle
/// integrand.
pub fn schwinger_action_multi(
    paths: &[ExtendedPath],
    particles: &[crate::characteristics::ParticleSpec],
) -> Result<f64> {
    let mut total = 0.0;
    for (path, p) in paths.iter().zip(particles.iter()) {
        let n = path.len();
        if n < 2 {
            return Err(KvnError::TooFewSamples { needed: 2, got: n });
        }
        let xdot = derivative(&path.x, path.h);
        let vdot = derivative(&path.v, path.h);
        let integrand: Vec<f64> = (0..n)
            .map(|i| {
                path.lambda_x[i] * (xdot[i] - path.v[i])
                    + path.lambda_v[i] * (vdot[i] - p.force(path.x[i]) / p.mass)
            })
            .collect();
        total += trapezoid(&integrand, path.h);
    }
    Ok(total)
}

/// `x -> x + eps*eta`, `v -> v + eps*eta_dot`.
pub fn vary_classical(
    path: &ClassicalPath,
    spec: &VariationSpec,
    eps: f64,
) -> Result<ClassicalPath> {
    if spec.eta.len() != path.len() {
        return Err(KvnError::WindowLengthMismatch {
            window: spec.eta.len(),
            path: path.len(),
        });
    }
    let mut out = path.clone();
    for i in 0..out.len() {
        out.x[i] += eps * spec.eta[i];
        out.v[i] += eps * spec.eta_dot[i];
    }
    Ok(out)
}

/// Same deformation on an extended path; the lambda components are
/// unperturbed.
pub fn vary_extended(
    epath: &ExtendedPath,
    spec: &VariationSpec,
    eps: f64,
) -> Result<ExtendedPath> {
    if spec.eta.len() != epath.len() {
        return Err(KvnError::WindowLengthMismatch {
            window: spec.eta.len(),
            path: epath.len(),
        });
    }
    let mut out = epath.clone();
    for i in 0..out.len() {
        out.x[i] += eps * spec.eta[i];
        out.v[i] += eps * spec.eta_dot[i];
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Stationary,
    NonStationary,
}

/// Value of an action on a path plus first-variation estimates for a window
/// family.
#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub action: String,
    pub value: f64,
    pub first_variations: Vec<f64>,
    pub classification: Classification,
    pub tol_stationary: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario_hash: Option<String>,
}

impl ActionReport {
    pub fn max_first_variation(&self) -> f64 {
        self.first_variations
            .iter()
            .fold(0.0f64, |m, &d| m.max(d.abs()))
    }
}

/// Smallest positive epsilon of a symmetric list.
fn smallest_symmetric_eps(epsilons: &[f64]) -> Result<f64> {
    if epsilons.is_empty() {
        return Err(KvnError::BadEpsilonList);
    }
    let mut best = f64::INFINITY;
    for &e in epsilons {
        if e == 0.0 || !e.is_finite() {
            return Err(KvnError::BadEpsilonList);
        }
        if !epsilons.iter().any(|&o| o == -e) {
            return Err(KvnError::BadEpsilonList);
        }
        best = best.min(e.abs());
    }
    Ok(best)
}

fn classify(value: f64, first_variations: &[f64], path_scale: f64) -> (Classification, f64) {
    let tol = 1e-6 * (1.0 + value.abs() + path_scale);
    let max_fv = first_variations.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    let class = if max_fv < tol {
        Classification::Stationary
    } else {
        Classification::NonStationary
    };
    (class, tol)
}

/// First variation of the Hamiltonian action under a family of window
/// deformations.
pub fn first_variation_hamilton(
    path: &ClassicalPath,
    potential: &PotentialSpec,
    mass: f64,
    windows: &[VariationSpec],
    epsilons: &[f64],
) -> Result<ActionReport> {
    let eps = smallest_symmetric_eps(epsilons)?;
    let w0 = hamilton_action(path, potential, mass)?;
    let mut fvs = Vec::with_capacity(windows.len());
    for spec in windows {
        let wp = hamilton_action(&vary_classical(path, spec, eps)?, potential, mass)?;
        let wm = hamilton_action(&vary_classical(path, spec, -eps)?, potential, mass)?;
        fvs.push((wp - wm) / (2.0 * eps));
    }
    let path_scale = path
        .x
        .iter()
        .chain(path.v.iter())
        .fold(0.0f64, |m, &y| m.max(y.abs()));
    let (classification, tol) = classify(w0, &fvs, path_scale);
    Ok(ActionReport {
        action: "hamilton".into(),
        value: w0,
        first_variations: fvs,
        classification,
        tol_stationary: tol,
        scenario_hash: None,
    })
}

/// First variation of the Schwinger action under the same deformations
/// (lambda components untouched).
pub fn first_variation_schwinger(
    epath: &ExtendedPath,
    potential: &PotentialSpec,
    mass: f64,
    windows: &[VariationSpec],
    epsilons: &[f64],
) -> Result<ActionReport> {
    let eps = smallest_symmetric_eps(epsilons)?;
    let w0 = schwinger_action(epath, potential, mass, SchwingerForm::Full)?;
    let mut fvs = Vec::with_capacity(windows.len());
    for spec in windows {
        let wp = schwinger_action(
            &vary_extended(epath, spec, eps)?,
            potential,
            mass,
            SchwingerForm::Full,
        )?;
        let wm = schwinger_action(
            &vary_extended(epath, spec, -eps)?,
            potential,
            mass,
            SchwingerForm::Full,
        )?;
        fvs.push((wp - wm) / (2.0 * eps));
    }
    let path_scale = epath
        .x
        .iter()
        .chain(epath.v.iter())
        .chain(epath.lambda_x.iter())
        .chain(epath.lambda_v.iter())
        .fold(0.0f64, |m, &y| m.max(y.abs()));
    let (classification, tol) = classify(w0, &fvs, path_scale);
    Ok(ActionReport {
        action: "schwinger".into(),
        value: w0,
        first_variations: fvs,
        classification,
        tol_stationary: tol,
        scenario_hash: None,
    })
}

/// Scenario for the composite stationarity certificate.
#[derive(Debug, Clone)]
pub struct CertificateScenario {
    pub potential: PotentialSpec,
    pub mass: f64,
    pub x0: f64,
    pub v0: f64,
    pub lambda_x0: f64,
    pub lambda_v0: f64,
    pub t_final: f64,
    pub h: f64,
    pub n_windows: usize,
    pub seed: u64,
    pub epsilons: Vec<f64>,
}

impl CertificateScenario {
    pub fn new(potential: PotentialSpec, x0: f64, v0: f64, t_final: f64) -> Self {
        Self {
            potential,
            mass: 1.0,
            x0,
            v0,
            lambda_x0: 0.0,
            lambda_v0: 1.0,
            t_final,
            h: 1e-3,
            n_windows: 20,
            seed: 42,
            epsilons: DEFAULT_EPSILONS.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BiasedHamilton {
    pub bias: f64,
    pub report: ActionReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct BiasedSchwinger {
    pub bias: f64,
    /// Value of the Schwinger action on the biased path with multipliers
    /// integrated consistently along it. The first variation stays zero in
    /// that configuration, so the action value is the off-shell indicator.
    pub w_s: f64,
}

/// Composite on-shell/off-shell stationarity verdict for one scenario.
#[derive(Debug, Clone, Serialize)]
pub struct StationarityCertificate {
    pub potential: String,
    pub mass: f64,
    pub t_final: f64,
    pub h: f64,
    pub seed: u64,
    pub degenerate_lambda: bool,
    pub hamilton_on_shell: ActionReport,
    pub hamilton_biased: Vec<BiasedHamilton>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schwinger_on_shell: Option<ActionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schwinger_lambda_perturbed: Option<ActionReport>,
    pub schwinger_biased: Vec<BiasedSchwinger>,
    pub passed: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario_hash: Option<String>,
}

/// Run the full stationarity protocol: both actions on the on-shell path,
/// the Hamilton action on acceleration-biased paths, the Schwinger action
/// with inconsistent multipliers, and the Schwinger off-shell value under
/// bias.
pub fn stationarity_certificate(sc: &CertificateScenario) -> Result<StationarityCertificate> {
    let n = (sc.t_final / sc.h).round() as usize;
    if n < 8 {
        return Err(KvnError::TooFewSamples { needed: 8, got: n });
    }
    let biases = [0.01, 0.1];
    let degenerate = sc.lambda_x0 == 0.0 && sc.lambda_v0 == 0.0;
    let mut notes = Vec::new();

    let cpath = classical_trajectory(sc.x0, sc.v0, &sc.potential, sc.mass, sc.h, n)?;
    let windows = window_family(&cpath.t, sc.n_windows, sc.seed);

    let hamilton_on_shell =
        first_variation_hamilton(&cpath, &sc.potential, sc.mass, &windows, &sc.epsilons)?;

    let mut hamilton_biased = Vec::new();
    for &bias in &biases {
        let bpath = biased_trajectory(sc.x0, sc.v0, &sc.potential, sc.mass, bias, sc.h, n)?;
        let report =
            first_variation_hamilton(&bpath, &sc.potential, sc.mass, &windows, &sc.epsilons)?;
        hamilton_biased.push(BiasedHamilton { bias, report });
    }

    let mut schwinger_on_shell = None;
    let mut schwinger_lambda_perturbed = None;
    let mut schwinger_biased = Vec::new();

    if degenerate {
        notes.push(
            "lambda initial data are identically zero: the Schwinger action vanishes for every \
             path and certifies nothing (degenerate multipliers)"
                .into(),
        );
    } else {
        let epath = rk4_extended_with_bias(
            sc.x0,
            sc.v0,
            sc.lambda_x0,
            sc.lambda_v0,
            &sc.potential,
            sc.mass,
            0.0,
            sc.h,
            n,
        )?;
        schwinger_on_shell = Some(first_variation_schwinger(
            &epath,
            &sc.potential,
            sc.mass,
            &windows,
            &sc.epsilons,
        )?);

        // Pointwise 1% modulation of lambda_v breaks the multiplier equation
        // (a uniform rescaling would not, by linearity).
        let mut perturbed = epath.clone();
        let span = sc.t_final;
        for i in 0..perturbed.len() {
            let s = (2.0 * std::f64::consts::PI * perturbed.t[i] / span).sin();
            perturbed.lambda_v[i] *= 1.0 + 0.01 * s;
        }
        schwinger_lambda_perturbed = Some(first_variation_schwinger(
            &perturbed,
            &sc.potential,
            sc.mass,
            &windows,
            &sc.epsilons,
        )?);

        for &bias in &biases {
            let bpath = rk4_extended_with_bias(
                sc.x0,
                sc.v0,
                sc.lambda_x0,
                sc.lambda_v0,
                &sc.potential,
                sc.mass,
                bias,
                sc.h,
                n,
            )?;
            let w_s = schwinger_action(&bpath, &sc.potential, sc.mass, SchwingerForm::Full)?;
            schwinger_biased.push(BiasedSchwinger { bias, w_s });
        }
    }

    // Verdict.
    let mut passed = hamilton_on_shell.classification == Classification::Stationary;
    let mut prev = hamilton_on_shell.max_first_variation();
    for b in &hamilton_biased {
        let fv = b.report.max_first_variation();
        passed &= b.report.classification == Classification::NonStationary && fv > prev;
        prev = fv;
    }
    if let Some(on) = &schwinger_on_shell {
        let ws_tol = 1e-8 * (1.0 + sc.x0.abs() + sc.v0.abs() + sc.lambda_v0.abs());
        passed &= on.classification == Classification::Stationary;
        passed &= on.value.abs() <= ws_tol;
        let detect = 10.0 * on.tol_stationary;
        if let Some(pert) = &schwinger_lambda_perturbed {
            passed &= pert.max_first_variation() > detect;
        }
        let mut prev_ws = on.value.abs();
        for b in &schwinger_biased {
            passed &= b.w_s.abs() > detect && b.w_s.abs() > prev_ws;
            prev_ws = b.w_s.abs();
        }
    }

    Ok(StationarityCertificate {
        potential: sc.potential.label(),
        mass: sc.mass,
        t_final: sc.t_final,
        h: sc.h,
        seed: sc.seed,
        degenerate_lambda: degenerate,
        hamilton_on_shell,
        hamilton_biased,
        schwinger_on_shell,
        schwinger_lambda_perturbed,
        schwinger_biased,
        passed,
        notes,
        scenario_hash: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristics::{extended_trajectory, ParticleSpec};
    use std::f64::consts::PI;

    fn harmonic() -> PotentialSpec {
        PotentialSpec::Harmonic { omega: 1.0 }
    }

    fn nodes(h: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| k as f64 * h).collect()
    }

    #[test]
    fn free_action_of_uniform_motion() {
        // x = v0 t with v0 = 2, m = 1, T = 1: the integrand is the constant
        // kinetic energy 2, so W = 2 with trapezoidal quadrature exact.
        let h = 1e-3;
        let n = 1000;
        let t = nodes(h, n);
        let path = ClassicalPath {
            x: t.iter().map(|&tt| 2.0 * tt).collect(),
            v: vec![2.0; n + 1],
            t,
            h,
        };
        let w = hamilton_action(&path, &PotentialSpec::Free, 1.0).unwrap();
        assert!((w - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constant_path_action_is_minus_potential() {
        let h = 1e-3;
        let n = 1000;
        let path = ClassicalPath {
            t: nodes(h, n),
            x: vec![1.0; n + 1],
            v: vec![0.0; n + 1],
            h,
        };
        let w = hamilton_action(&path, &harmonic(), 1.0).unwrap();
        assert!((w + 0.5).abs() < 1e-12);
    }

    #[test]
    fn harmonic_quarter_period_action_vanishes() {
        let h = 1e-3;
        let n = (0.5 * PI / h).round() as usize;
        let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, h, n).unwrap();
        let w = hamilton_action(&path, &harmonic(), 1.0).unwrap();
        assert!(w.abs() < 2e-3, "quarter-period action {w}");
    }

    #[test]
    fn kinematically_inconsistent_path_is_rejected() {
        let h = 1e-3;
        let n = 100;
        let path = ClassicalPath {
            t: nodes(h, n),
            x: vec![1.0; n + 1],
            v: vec![1.0; n + 1],
            h,
        };
        assert!(matches!(
            hamilton_action(&path, &harmonic(), 1.0),
            Err(KvnError::KinematicallyInconsistent { .. })
        ));
    }

    #[test]
    fn euler_lagrange_residual_values() {
        let h = 1e-3;
        let n = 2000;
        let oracle = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, h, n).unwrap();
        assert!(euler_lagrange_residual(&oracle, &harmonic(), 1.0).unwrap() < 1e-5);

        let line = ClassicalPath {
            t: nodes(h, n),
            x: vec![1.0; n + 1],
            v: vec![0.0; n + 1],
            h,
        };
        let r = euler_lagrange_residual(&line, &harmonic(), 1.0).unwrap();
        assert!((r - 1.0).abs() < 1e-12, "constant path residual {r}");

        let free_line = ClassicalPath {
            t: nodes(h, n),
            x: (0..=n).map(|k| 0.3 + 2.0 * k as f64 * h).collect(),
            v: vec![2.0; n + 1],
            h,
        };
        assert!(euler_lagrange_residual(&free_line, &PotentialSpec::Free, 1.0).unwrap() < 1e-12);
    }

    #[test]
    fn schwinger_action_vanishes_on_shell() {
        for potential in [harmonic(), PotentialSpec::Quartic { a4: 1.0 }] {
            let epath =
                extended_trajectory(1.0, 0.0, 0.3, 1.0, &potential, 1.0, 1e-3, 2000).unwrap();
            let w = schwinger_action(&epath, &potential, 1.0, SchwingerForm::Full).unwrap();
            assert!(w.abs() < 1e-8, "{}: W_S = {w}", potential.label());
            let w_red = schwinger_action(&epath, &potential, 1.0, SchwingerForm::Reduced).unwrap();
            assert!(w_red.abs() < 1e-8);
        }
    }

    #[test]
    fn constant_acceleration_bias_integrates_exactly() {
        // v_dot - F/m = 0.1 along the path; with lambda_v = 1 and T = 1 the
        // action equals the bias.
        let mut epath = crate::characteristics::rk4_extended_with_bias(
            1.0,
            0.0,
            0.0,
            1.0,
            &harmonic(),
            1.0,
            0.1,
            1e-3,
            1000,
        )
        .unwrap();
        epath.lambda_x = vec![0.0; epath.len()];
        epath.lambda_v = vec![1.0; epath.len()];
        let w = schwinger_action(&epath, &harmonic(), 1.0, SchwingerForm::Full).unwrap();
        assert!((w - 0.1).abs() < 1e-8, "biased action {w}");
    }

    #[test]
    fn non_kinematic_path_with_zero_lambda_x() {
        // x follows its own curve while v is constant; for the free particle
        // v_dot = F/m = 0 and lambda_x = 0 kills the other term.
        let h = 1e-3;
        let n = 1000;
        let t = nodes(h, n);
        let epath = ExtendedPath {
            x: t.iter().map(|&tt| (2.0 * tt).sin()).collect(),
            v: vec![0.3; n + 1],
            lambda_x: vec![0.0; n + 1],
            lambda_v: t.iter().map(|&tt| tt.cos()).collect(),
            t,
            h,
        };
        let w = schwinger_action(&epath, &PotentialSpec::Free, 1.0, SchwingerForm::Full).unwrap();
        assert!(w.abs() < 1e-10);
    }

    #[test]
    fn schwinger_action_is_linear_in_lambda() {
        let mut epath = crate::characteristics::rk4_extended_with_bias(
            1.0, 0.0, 0.0, 1.0, &harmonic(), 1.0, 0.1, 1e-3, 1000,
        )
        .unwrap();
        epath.lambda_x = vec![0.0; epath.len()];
        epath.lambda_v = vec![1.0; epath.len()];
        let w1 = schwinger_action(&epath, &harmonic(), 1.0, SchwingerForm::Full).unwrap();
        let mut scaled = epath.clone();
        for l in scaled.lambda_v.iter_mut() {
            *l *= 2.5;
        }
        let w2 = schwinger_action(&scaled, &harmonic(), 1.0, SchwingerForm::Full).unwrap();
        assert!((w2 - 2.5 * w1).abs() < 1e-12);
    }

    #[test]
    fn multi_particle_action_vanishes_on_shell() {
        let particles = vec![
            ParticleSpec {
                mass: 1.0,
                potentials: vec![harmonic()],
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
        let paths = crate::characteristics::multi_extended_trajectory(&particles, 1e-3, 1000)
            .unwrap();
        let w = schwinger_action_multi(&paths, &particles).unwrap();
        assert!(w.abs() < 1e-8, "multi-particle on-shell action {w}");
    }

    #[test]
    fn zero_deformation_is_identity() {
        let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, 1e-3, 500).unwrap();
        let windows = window_family(&path.t, 1, 1);
        let same = vary_classical(&path, &windows[0], 0.0).unwrap();
        assert_eq!(path.x, same.x);
        assert_eq!(path.v, same.v);
    }

    #[test]
    fn deformation_keeps_endpoints() {
        let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, 1e-3, 500).unwrap();
        for spec in window_family(&path.t, 6, 7) {
            let bent = vary_classical(&path, &spec, 1e-2).unwrap();
            let n = path.len() - 1;
            assert!((bent.x[0] - path.x[0]).abs() < 1e-12);
            assert!((bent.x[n] - path.x[n]).abs() < 1e-12);
            assert!((bent.v[0] - path.v[0]).abs() < 1e-11);
            assert!((bent.v[n] - path.v[n]).abs() < 1e-11);
        }
    }

    #[test]
    fn deformed_path_violates_euler_lagrange_at_order_eps() {
        let h = 1e-3;
        let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, h, 2000).unwrap();
        let spec = &window_family(&path.t, 1, 1)[0];
        let eps = 1e-3;
        let bent = vary_classical(&path, spec, eps).unwrap();
        let r = euler_lagrange_residual(&bent, &harmonic(), 1.0).unwrap();
        // Residual of the deformation alone: eps * (eta_ddot + omega^2 eta).
        let eta_ddot = derivative(&spec.eta_dot, h);
        let expected = (0..path.len())
            .map(|i| (eps * (eta_ddot[i] + spec.eta[i])).abs())
            .fold(0.0, f64::max);
        assert!(
            r > 0.5 * expected && r < 1.5 * expected,
            "residual {r} vs expected scale {expected}"
        );
    }

    #[test]
    fn window_family_is_seeded_and_well_formed() {
        let t = nodes(1e-3, 1500);
        let a = window_family(&t, 20, 42);
        let b = window_family(&t, 20, 42);
        let c = window_family(&t, 20, 43);
        assert_eq!(a.len(), 20);
        for (wa, wb) in a.iter().zip(b.iter()) {
            assert_eq!(wa.eta, wb.eta);
        }
        let differs = a
            .iter()
            .zip(c.iter())
            .skip(4)
            .any(|(wa, wc)| wa.eta != wc.eta);
        assert!(differs, "seeded windows must depend on the seed");
        for w in &a {
            w.validate().unwrap();
            let peak = w.eta.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
            assert!((peak - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn epsilon_list_must_be_symmetric() {
        let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, 1e-3, 100).unwrap();
        let windows = window_family(&path.t, 2, 1);
        assert!(matches!(
            first_variation_hamilton(&path, &harmonic(), 1.0, &windows, &[1e-3, 1e-4]),
            Err(KvnError::BadEpsilonList)
        ));
        assert!(matches!(
            first_variation_hamilton(&path, &harmonic(), 1.0, &windows, &[]),
            Err(KvnError::BadEpsilonList)
        ));
    }

    #[test]
    fn first_variation_matches_quadrature_oracle() {
        // dW/deps must equal -integral of eta times the signed
        // Euler-Lagrange defect (integration by parts with vanishing
        // endpoint terms).
        let h = 1e-3;
        let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, h, 2000).unwrap();
        let windows = window_family(&path.t, 8, 42);
        let report =
            first_variation_hamilton(&path, &harmonic(), 1.0, &windows, &DEFAULT_EPSILONS).unwrap();
        for (spec, &fv) in windows.iter().zip(report.first_variations.iter()) {
            let mut oracle = 0.0;
            for i in 1..path.len() - 1 {
                let dv = (path.v[i + 1] - path.v[i - 1]) / (2.0 * h);
                let r = dv - harmonic().force(path.x[i]);
                oracle -= spec.eta[i] * r * h;
            }
            assert!(
                (fv - oracle).abs() < 1e-7,
                "window {}: {fv} vs oracle {oracle}",
                spec.label
            );
        }
    }

    #[test]
    fn on_shell_first_variation_shrinks_with_the_step() {
        // The on-shell |dW/deps| bound is set by the integrator's O(h^2)
        // Euler-Lagrange defect, so halving h shrinks it about fourfold.
        let fv_at = |h: f64| {
            let n = (1.0 / h).round() as usize;
            let path = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, h, n).unwrap();
            let windows = window_family(&path.t, 6, 42);
            first_variation_hamilton(&path, &harmonic(), 1.0, &windows, &DEFAULT_EPSILONS)
                .unwrap()
                .max_first_variation()
        };
        let coarse = fv_at(2e-3);
        let fine = fv_at(1e-3);
        let ratio = coarse / fine;
        assert!(
            (2.8..=5.5).contains(&ratio),
            "bound ratio {ratio} (coarse {coarse:.3e}, fine {fine:.3e})"
        );
    }

    #[test]
    fn windows_from_samples_are_validated() {
        let h = 1e-3;
        let n = 1000;
        let t: Vec<f64> = (0..=n).map(|k| k as f64 * h).collect();
        let span = t[n];
        let eta: Vec<f64> = t
            .iter()
            .map(|&tt| (std::f64::consts::PI * tt / span).sin().powi(6))
            .collect();
        let spec = VariationSpec::from_samples("sampled sin6", &t, eta).unwrap();
        assert!(spec.eta_dot[0].abs() < 1e-9);

        // A window that does not vanish at the endpoints is rejected.
        let bad = vec![1.0; n + 1];
        assert!(VariationSpec::from_samples("offset", &t, bad).is_err());
    }

    #[test]
    fn default_family_endpoint_derivatives_vanish_to_1e12() {
        let t: Vec<f64> = (0..=1500).map(|k| k as f64 * 1e-3).collect();
        for w in window_family(&t, 20, 5) {
            let n = w.eta.len() - 1;
            assert!(w.eta[0].abs() < 1e-12 && w.eta[n].abs() < 1e-12);
            assert!(w.eta_dot[0].abs() < 1e-12 && w.eta_dot[n].abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_lambda_certificate_is_flagged() {
        let mut sc = CertificateScenario::new(harmonic(), 1.0, 0.0, 1.0);
        sc.lambda_x0 = 0.0;
        sc.lambda_v0 = 0.0;
        let cert = stationarity_certificate(&sc).unwrap();
        assert!(cert.degenerate_lambda);
        assert!(cert.schwinger_on_shell.is_none());
        assert!(!cert.notes.is_empty());
        assert!(cert.passed, "Hamilton side still certifies");
    }

    #[test]
    fn perturbed_multiplier_breaks_stationarity_both_ways() {
        // Scaling lambda uniformly keeps it a solution of the multiplier
        // equation (linearity), so only the pointwise modulation may trip
        // the classifier.
        let mut sc = CertificateScenario::new(harmonic(), 1.0, 0.0, 2.0);
        sc.seed = 7;
        let epath = extended_trajectory(1.0, 0.0, 0.0, 3.0, &harmonic(), 1.0, sc.h, 2000).unwrap();
        let windows = window_family(&epath.t, 10, sc.seed);
        let scaled = first_variation_schwinger(&epath, &harmonic(), 1.0, &windows, &sc.epsilons)
            .unwrap();
        assert_eq!(scaled.classification, Classification::Stationary);

        let mut modulated = epath.clone();
        for i in 0..modulated.len() {
            let s = (PI * modulated.t[i]).sin();
            modulated.lambda_v[i] *= 1.0 + 0.01 * s;
        }
        let broken =
            first_variation_schwinger(&modulated, &harmonic(), 1.0, &windows, &sc.epsilons)
                .unwrap();
        assert_eq!(broken.classification, Classification::NonStationary);
        assert!(broken.max_first_variation() > 10.0 * scaled.tol_stationary);
    }
}
