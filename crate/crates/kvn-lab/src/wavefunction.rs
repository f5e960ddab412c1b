//! Phase-space wavefunctions and the unitary changes of representation.
//!
//! A wavefunction is a complex field on a [`PhaseSpaceGrid`] together with a
//! representation tag saying what each axis means: position or its conjugate
//! wavenumber, velocity or its conjugate wavenumber. Changes of
//! representation are discrete Fourier transforms normalized to be exactly
//! unitary between the discrete inner products of the two representations,
//! with the transform kernel carrying the phase `exp(+i v k_v)` per axis (and
//! likewise in x).

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{KvnError, Result};
use crate::fft::{fft_cols, fft_rows, plan_axis};
use crate::grid::PhaseSpaceGrid;

const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

/// Which variable each axis of the field currently represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Position and velocity.
    XV,
    /// Position and the wavenumber conjugate to velocity.
    XLv,
    /// The wavenumber conjugate to position, and velocity.
    LxV,
    /// Both conjugate wavenumbers.
    LxLv,
}

impl Representation {
    pub fn x_spectral(self) -> bool {
        matches!(self, Representation::LxV | Representation::LxLv)
    }

    pub fn v_spectral(self) -> bool {
        matches!(self, Representation::XLv | Representation::LxLv)
    }
}

impl std::fmt::Display for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Representation::XV => "(x, v)",
            Representation::XLv => "(x, lambda_v)",
            Representation::LxV => "(lambda_x, v)",
            Representation::LxLv => "(lambda_x, lambda_v)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct WaveFunction {
    pub grid: PhaseSpaceGrid,
    pub data: Array2<Complex64>,
    pub rep: Representation,
}

impl WaveFunction {
    /// Build a wavefunction in the (x, v) representation by sampling `f`.
    pub fn from_fn(grid: &PhaseSpaceGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let data = Array2::from_shape_fn((grid.nx, grid.nv), |(i, j)| f(grid.x[i], grid.v[j]));
        Self {
            grid: grid.clone(),
            data,
            rep: Representation::XV,
        }
    }

    /// Normalized Gaussian packet centered at `(x0, v0)` whose density
    /// `|psi|^2` is the product Gaussian with standard deviations
    /// `(sigma_x, sigma_v)`.
    ///
    /// Guards: each width must cover at least 4 grid spacings (so the packet
    /// is band-limited on the grid) and the center must sit at least 4 sigma
    /// from every domain edge.
    pub fn gaussian_packet(
        grid: &PhaseSpaceGrid,
        x0: f64,
        v0: f64,
        sigma_x: f64,
        sigma_v: f64,
    ) -> Result<Self> {
        if sigma_x < 4.0 * grid.dx {
            return Err(KvnError::PacketTooNarrow {
                field: "sigma_x",
                sigma: sigma_x,
                min: 4.0 * grid.dx,
            });
        }
        if sigma_v < 4.0 * grid.dv {
            return Err(KvnError::PacketTooNarrow {
                field: "sigma_v",
                sigma: sigma_v,
                min: 4.0 * grid.dv,
            });
        }
        if x0 - 4.0 * sigma_x < grid.x_min || x0 + 4.0 * sigma_x > grid.x_max {
            return Err(KvnError::PacketNearBoundary { axis: "x" });
        }
        if v0 - 4.0 * sigma_v < grid.v_min || v0 + 4.0 * sigma_v > grid.v_max {
            return Err(KvnError::PacketNearBoundary { axis: "v" });
        }
        let mut psi = Self::from_fn(grid, |x, v| {
            let ax = (x - x0) / (2.0 * sigma_x);
            let av = (v - v0) / (2.0 * sigma_v);
            Complex64::new((-ax * ax - av * av).exp(), 0.0)
        });
        psi.normalize();
        Ok(psi)
    }

    /// Cell measure of the current representation.
    pub fn cell_measure(&self) -> f64 {
        let mx = if self.rep.x_spectral() {
            self.grid.dkx()
        } else {
            self.grid.dx
        };
        let mv = if self.rep.v_spectral() {
            self.grid.dkv()
        } else {
            self.grid.dv
        };
        mx * mv
    }

    /// Discrete inner product `<self, other>` with the representation's cell
    /// measure. Conjugate-linear in `self`.
    pub fn inner_product(&self, other: &WaveFunction) -> Result<Complex64> {
        if !self.grid.same_layout(&other.grid) {
            return Err(KvnError::GridMismatch);
        }
        if self.rep != other.rep {
            return Err(KvnError::RepMismatch {
                expected: self.rep.to_string(),
                found: other.rep.to_string(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            acc += a.conj() * b;
        }
        Ok(acc * self.cell_measure())
    }

    /// L2 norm under the discrete inner product.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for a in self.data.iter() {
            acc += a.norm_sqr();
        }
        (acc * self.cell_measure()).sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let s = Complex64::new(1.0 / n, 0.0);
            self.data.mapv_inplace(|z| z * s);
        }
    }

    /// Unitary change of representation. The round trip through any sequence
    /// of representations is the identity to rounding.
    pub fn transform(&self, target: Representation) -> Result<WaveFunction> {
        let mut out = self.clone();
        out.transform_in_place(target)?;
        Ok(out)
    }

    fn transform_in_place(&mut self, target: Representation) -> Result<()> {
        let g = self.grid.clone();
        let mut scratch = Vec::new();

        if self.rep.v_spectral() != target.v_spectral() {
            let plan = plan_axis(g.nv);
            if target.v_spectral() {
                fft_rows(&mut self.data, &plan.fwd, &mut scratch);
                let s = g.dv / SQRT_TWO_PI;
                for k in 0..g.nv {
                    let anchor = Complex64::from_polar(s, -g.kv[k] * g.v_min);
                    self.data.column_mut(k).mapv_inplace(|z| z * anchor);
                }
            } else {
                for k in 0..g.nv {
                    let anchor = Complex64::from_polar(1.0, g.kv[k] * g.v_min);
                    self.data.column_mut(k).mapv_inplace(|z| z * anchor);
                }
                fft_rows(&mut self.data, &plan.inv, &mut scratch);
                let s = Complex64::new(g.dkv() / SQRT_TWO_PI, 0.0);
                self.data.mapv_inplace(|z| z * s);
            }
        }

        if self.rep.x_spectral() != target.x_spectral() {
            let plan = plan_axis(g.nx);
            let mut work = Array2::zeros((g.nv, g.nx));
            if target.x_spectral() {
                fft_cols(&mut self.data, &plan.fwd, &mut work, &mut scratch);
                let s = g.dx / SQRT_TWO_PI;
                for k in 0..g.nx {
                    let anchor = Complex64::from_polar(s, -g.kx[k] * g.x_min);
                    self.data.row_mut(k).mapv_inplace(|z| z * anchor);
                }
            } else {
                for k in 0..g.nx {
                    let anchor = Complex64::from_polar(1.0, g.kx[k] * g.x_min);
                    self.data.row_mut(k).mapv_inplace(|z| z * anchor);
                }
                fft_cols(&mut self.data, &plan.inv, &mut work, &mut scratch);
                let s = Complex64::new(g.dkx() / SQRT_TWO_PI, 0.0);
                self.data.mapv_inplace(|z| z * s);
            }
        }

        self.rep = target;
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> PhaseSpaceGrid {
        PhaseSpaceGrid::new(64, 64, -8.0, 8.0, -8.0, 8.0).unwrap()
    }

    #[test]
    fn gaussian_packet_is_normalized() {
        let psi = WaveFunction::gaussian_packet(&grid(), 1.0, 0.0, 1.0, 1.0).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        let n2 = psi.inner_product(&psi).unwrap();
        assert!((n2.re - 1.0).abs() < 1e-12);
        assert!(n2.im.abs() < 1e-14);
    }

    #[test]
    fn gaussian_packet_guards() {
        let g = grid();
        let err = WaveFunction::gaussian_packet(&g, 0.0, 0.0, 0.5 * g.dx, 1.0).unwrap_err();
        assert!(err.to_string().contains("sigma_x"));
        let err = WaveFunction::gaussian_packet(&g, 7.9, 0.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("closer than 4 sigma"));
    }

    #[test]
    fn inner_product_is_sesquilinear() {
        let psi = WaveFunction::gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let mut ipsi = psi.clone();
        ipsi.data.mapv_inplace(|z| z * Complex64::i());
        let p = psi.inner_product(&ipsi).unwrap();
        assert!((p - Complex64::i()).norm() < 1e-12);
    }

    #[test]
    fn distant_gaussians_overlap_matches_closed_form() {
        // Two unit-norm Gaussians separated by 10 sigma on each axis.
        // Closed form: |<a,b>| = exp(-dx^2/(8 sx^2)) * exp(-dv^2/(8 sv^2)).
        let g = PhaseSpaceGrid::new(256, 256, -8.0, 8.0, -8.0, 8.0).unwrap();
        let s = 0.4;
        let a = WaveFunction::gaussian_packet(&g, -2.0, -2.0, s, s).unwrap();
        let b = WaveFunction::gaussian_packet(&g, 2.0, 2.0, s, s).unwrap();
        let overlap = a.inner_product(&b).unwrap().norm();
        let expected = (-(4.0f64).powi(2) / (8.0 * s * s)).exp().powi(2);
        assert!(overlap < 1e-10, "overlap {overlap}");
        assert!((overlap - expected).abs() < 1e-12);
    }

    #[test]
    fn inner_product_rejects_mixed_reps() {
        let psi = WaveFunction::gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let chi = psi.transform(Representation::XLv).unwrap();
        assert!(psi.inner_product(&chi).is_err());
    }

    #[test]
    fn transform_round_trip_is_identity() {
        let psi = WaveFunction::gaussian_packet(&grid(), 1.0, -0.5, 1.2, 1.0).unwrap();
        for target in [
            Representation::XLv,
            Representation::LxV,
            Representation::LxLv,
        ] {
            let back = psi
                .transform(target)
                .unwrap()
                .transform(Representation::XV)
                .unwrap();
            let max_err = psi
                .data
                .iter()
                .zip(back.data.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(max_err < 1e-12, "round trip through {target}: {max_err}");
        }
    }

    #[test]
    fn transforms_preserve_norm() {
        let psi = WaveFunction::gaussian_packet(&grid(), 1.0, -0.5, 1.2, 1.0).unwrap();
        for target in [
            Representation::XLv,
            Representation::LxV,
            Representation::LxLv,
        ] {
            let chi = psi.transform(target).unwrap();
            assert!((chi.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn packet_marginals_are_gaussian() {
        // Summing the density over one axis leaves the 1D Gaussian of the
        // other axis.
        let g = PhaseSpaceGrid::new(256, 256, -8.0, 8.0, -8.0, 8.0).unwrap();
        let (x0, v0, sx, sv) = (1.0, -0.5, 0.5, 0.7);
        let psi = WaveFunction::gaussian_packet(&g, x0, v0, sx, sv).unwrap();
        let rho = psi.data.mapv(|z| z.norm_sqr());
        let norm_x = 1.0 / (sx * (2.0 * std::f64::consts::PI).sqrt());
        let mut worst = 0.0f64;
        for i in 0..g.nx {
            let marginal: f64 = rho.row(i).iter().sum::<f64>() * g.dv;
            let expected = norm_x * (-((g.x[i] - x0) / sx).powi(2) / 2.0).exp();
            worst = worst.max((marginal - expected).abs());
        }
        assert!(worst < 1e-8, "x-marginal deviation {worst}");
        let norm_v = 1.0 / (sv * (2.0 * std::f64::consts::PI).sqrt());
        worst = 0.0;
        for j in 0..g.nv {
            let marginal: f64 = rho.column(j).iter().sum::<f64>() * g.dx;
            let expected = norm_v * (-((g.v[j] - v0) / sv).powi(2) / 2.0).exp();
            worst = worst.max((marginal - expected).abs());
        }
        assert!(worst < 1e-8, "v-marginal deviation {worst}");
    }

    #[test]
    fn plane_wave_in_v_becomes_a_spike() {
        // exp(i k v) at a grid wavenumber concentrates on that wavenumber
        // column after the v-axis transform.
        let g = grid();
        let k_index = 5;
        let k = g.kv[k_index];
        let psi = WaveFunction::from_fn(&g, |x, v| {
            let gauss = (-(x * x) / 4.0).exp();
            Complex64::from_polar(gauss, k * v)
        });
        let chi = psi.transform(Representation::XLv).unwrap();
        let spike: f64 = chi
            .data
            .column(k_index)
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
        let total: f64 = chi.data.iter().map(|z| z.norm_sqr()).sum();
        assert!(spike / total > 1.0 - 1e-12);
    }
}
