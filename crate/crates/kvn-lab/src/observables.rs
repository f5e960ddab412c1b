//! Densities, expectation values, and the Newton-equation residual.

use ndarray::Array2;

use crate::error::{KvnError, Result};
use crate::operators::{apply, OperatorId};
use crate::wavefunction::{Representation, WaveFunction};

/// Pointwise phase-space density `|psi|^2` in the (x, v) representation.
pub fn density(psi: &WaveFunction) -> Result<Array2<f64>> {
    if psi.rep != Representation::XV {
        return Err(KvnError::RepMismatch {
            expected: Representation::XV.to_string(),
            found: psi.rep.to_string(),
        });
    }
    Ok(psi.data.mapv(|z| z.norm_sqr()))
}

/// Real expectation value of a Hermitian operator. The imaginary part of
/// `<psi, Op psi>` is asserted below 1e-10; anything larger signals a broken
/// operator or a representation mismatch.
pub fn expectation(op: &OperatorId, psi: &WaveFunction) -> Result<f64> {
    let op_psi = apply(op, psi)?;
    let val = psi.inner_product(&op_psi)?;
    if val.im.abs() > 1e-10 {
        return Err(KvnError::NonHermitianExpectation { imag: val.im });
    }
    Ok(val.re)
}

/// Time series of observables recorded along a propagation run.
///
/// `newton_residual[i]` holds the centered-difference `d<v>/dt` minus
/// `<F>/m` at interior samples and NaN at the two endpoints.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ObservableSeries {
    pub t: Vec<f64>,
    pub norm: Vec<f64>,
    pub mean_x: Vec<f64>,
    pub mean_v: Vec<f64>,
    pub mean_force_over_m: Vec<f64>,
    pub newton_residual: Vec<f64>,
    /// Set when any recorded density puts more than 1e-8 of its mass within
    /// two cells of a domain edge; observables are unreliable past that
    /// point because the domain wraps around.
    pub boundary_touched: bool,
}

impl ObservableSeries {
    pub fn new() -> Self {
        Self {
            t: Vec::new(),
            norm: Vec::new(),
            mean_x: Vec::new(),
            mean_v: Vec::new(),
            mean_force_over_m: Vec::new(),
            newton_residual: Vec::new(),
            boundary_touched: false,
        }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub(crate) fn push(&mut self, t: f64, norm: f64, mean_x: f64, mean_v: f64, f_over_m: f64) {
        self.t.push(t);
        self.norm.push(norm);
        self.mean_x.push(mean_x);
        self.mean_v.push(mean_v);
        self.mean_force_over_m.push(f_over_m);
    }

    /// Fill the residual column once all samples are recorded.
    pub(crate) fn finalize_residuals(&mut self) {
        let n = self.len();
        self.newton_residual = vec![f64::NAN; n];
        if n < 3 {
            return;
        }
        for i in 1..n - 1 {
            let dt = self.t[i + 1] - self.t[i - 1];
            let dv = (self.mean_v[i + 1] - self.mean_v[i - 1]) / dt;
            self.newton_residual[i] = dv - self.mean_force_over_m[i];
        }
    }

    /// CSV serialization: header row plus one line per sample at full
    /// precision (17 significant digits).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,norm,mean_x,mean_v,mean_force_over_m,newton_residual\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                g17(self.t[i]),
                g17(self.norm[i]),
                g17(self.mean_x[i]),
                g17(self.mean_v[i]),
                g17(self.mean_force_over_m[i]),
                g17(self.newton_residual[i]),
            ));
        }
        out
    }
}

impl Default for ObservableSeries {
    fn default() -> Self {
        Self::new()
    }
}

/// Full-precision float formatting shared by the CSV writers.
pub(crate) fn g17(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:.16e}")
    }
}

/// Maximum absolute Newton residual over the interior samples of a
/// uniformly recorded series.
pub fn newton_residual(series: &ObservableSeries) -> Result<f64> {
    let n = series.len();
    if n < 3 {
        return Err(KvnError::TooFewSamples { needed: 3, got: n });
    }
    let step = series.t[1] - series.t[0];
    for i in 1..n - 1 {
        let local = series.t[i + 1] - series.t[i];
        if (local - step).abs() > 1e-9 * step.abs().max(1.0) {
            return Err(KvnError::NonUniformSamples);
        }
    }
    let mut worst = 0.0f64;
    for i in 1..n - 1 {
        let dv = (series.mean_v[i + 1] - series.mean_v[i - 1]) / (2.0 * step);
        let r = (dv - series.mean_force_over_m[i]).abs();
        worst = worst.max(r);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::PhaseSpaceGrid;
    use num_complex::Complex64;

    fn grid() -> PhaseSpaceGrid {
        PhaseSpaceGrid::new(64, 64, -8.0, 8.0, -8.0, 8.0).unwrap()
    }

    #[test]
    fn density_integrates_to_squared_norm() {
        let g = grid();
        let psi = WaveFunction::gaussian_packet(&g, 1.0, 0.0, 1.0, 1.0).unwrap();
        let rho = density(&psi).unwrap();
        let total: f64 = rho.iter().sum::<f64>() * g.cell_area();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_ignores_global_phase() {
        let g = grid();
        let psi = WaveFunction::gaussian_packet(&g, 1.0, 0.0, 1.0, 1.0).unwrap();
        let mut rotated = psi.clone();
        let phase = Complex64::from_polar(1.0, 1.234);
        rotated.data.mapv_inplace(|z| z * phase);
        let a = density(&psi).unwrap();
        let b = density(&rotated).unwrap();
        let peak = a.iter().cloned().fold(0.0, f64::max);
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() <= 4.0 * f64::EPSILON * peak);
        }
    }

    #[test]
    fn density_peaks_at_packet_center() {
        let g = grid();
        let psi = WaveFunction::gaussian_packet(&g, 1.0, -2.0, 1.0, 1.0).unwrap();
        let rho = density(&psi).unwrap();
        let mut best = (0, 0);
        let mut best_val = 0.0;
        for ((i, j), &val) in rho.indexed_iter() {
            if val > best_val {
                best_val = val;
                best = (i, j);
            }
        }
        assert!((g.x[best.0] - 1.0).abs() <= g.dx / 2.0);
        assert!((g.v[best.1] + 2.0).abs() <= g.dv / 2.0);
    }

    #[test]
    fn position_expectation_hits_center() {
        let psi = WaveFunction::gaussian_packet(&grid(), 1.0, 0.0, 1.0, 1.0).unwrap();
        let x = expectation(&OperatorId::X, &psi).unwrap();
        assert!((x - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lambda_expectation_vanishes_on_real_states() {
        let psi = WaveFunction::gaussian_packet(&grid(), 1.0, 0.0, 1.0, 1.0).unwrap();
        let lx = expectation(&OperatorId::LambdaX, &psi).unwrap();
        assert!(lx.abs() < 1e-10);
    }

    #[test]
    fn force_expectation_on_harmonic_packet() {
        let psi = WaveFunction::gaussian_packet(&grid(), 1.0, 0.0, 1.0, 1.0).unwrap();
        let p = crate::potential::PotentialSpec::Harmonic { omega: 1.0 };
        let f = expectation(&OperatorId::Force(p), &psi).unwrap();
        assert!((f + 1.0).abs() < 1e-6);
    }

    #[test]
    fn expectation_agrees_with_dense_quadratic_form() {
        let g = PhaseSpaceGrid::new(16, 16, -8.0, 8.0, -8.0, 8.0).unwrap();
        let states = crate::characteristics::interior_test_states(&g, 3);
        for op in [
            OperatorId::X,
            OperatorId::LambdaV,
            OperatorId::Liouvillian {
                potential: crate::potential::PotentialSpec::Harmonic { omega: 1.0 },
                mass: 1.0,
            },
        ] {
            let dense = crate::operators::to_dense(&op, &g).unwrap();
            for psi in &states {
                let direct = psi
                    .inner_product(&crate::operators::apply(&op, psi).unwrap())
                    .unwrap();
                let quad = dense.expectation(psi).unwrap();
                assert!((direct - quad).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn residual_needs_three_samples() {
        let mut s = ObservableSeries::new();
        s.push(0.0, 1.0, 0.0, 0.0, 0.0);
        s.push(0.1, 1.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            newton_residual(&s),
            Err(KvnError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn residual_vanishes_for_linear_motion() {
        let mut s = ObservableSeries::new();
        for k in 0..10 {
            let t = 0.1 * k as f64;
            s.push(t, 1.0, 2.0 * t, 2.0, 0.0);
        }
        assert!(newton_residual(&s).unwrap() < 1e-12);
    }
}
