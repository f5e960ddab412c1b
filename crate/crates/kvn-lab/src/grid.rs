//! Periodic (x, v) phase-space discretization with conjugate wavenumber axes.
//!
//! Both axes are half-open periodic intervals sampled at a power-of-two number
//! of points. The wavenumber axes follow the standard discrete-transform
//! layout with the Nyquist mode assigned the positive sign, so `k*d` spans
//! `(-pi, pi]` on each axis. These wavenumbers are the eigenvalue axes of the
//! translation generators (`lambda_x`, `lambda_v`).

use crate::error::{KvnError, Result};

#[derive(Debug, Clone)]
pub struct PhaseSpaceGrid {
    pub nx: usize,
    pub nv: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub dx: f64,
    pub dv: f64,
    /// Position samples, `x[i] = x_min + i*dx`.
    pub x: Vec<f64>,
    /// Velocity samples, `v[j] = v_min + j*dv`.
    pub v: Vec<f64>,
    /// Wavenumbers conjugate to x, in transform (FFT) ordering.
    pub kx: Vec<f64>,
    /// Wavenumbers conjugate to v, in transform (FFT) ordering.
    pub kv: Vec<f64>,
}

fn check_axis(n: usize, min: f64, max: f64, axis: &'static str) -> Result<()> {
    if n < 8 {
        return Err(KvnError::SizeTooSmall(n));
    }
    if !n.is_power_of_two() {
        return Err(KvnError::SizeNotPowerOfTwo(n));
    }
    if !(max > min) {
        return Err(KvnError::InvertedBounds { axis, min, max });
    }
    Ok(())
}

/// Wavenumbers for an n-point periodic axis of spacing d, FFT ordering,
/// with the Nyquist mode on the positive side: k*d in (-pi, pi].
fn wavenumbers(n: usize, d: f64) -> Vec<f64> {
    let base = 2.0 * std::f64::consts::PI / (n as f64 * d);
    (0..n)
        .map(|j| {
            let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            base * m
        })
        .collect()
}

impl PhaseSpaceGrid {
    pub fn new(
        nx: usize,
        nv: usize,
        x_min: f64,
        x_max: f64,
        v_min: f64,
        v_max: f64,
    ) -> Result<Self> {
        check_axis(nx, x_min, x_max, "x")?;
        check_axis(nv, v_min, v_max, "v")?;
        let dx = (x_max - x_min) / nx as f64;
        let dv = (v_max - v_min) / nv as f64;
        let x = (0..nx).map(|i| x_min + i as f64 * dx).collect();
        let v = (0..nv).map(|j| v_min + j as f64 * dv).collect();
        let kx = wavenumbers(nx, dx);
        let kv = wavenumbers(nv, dv);
        Ok(Self {
            nx,
            nv,
            x_min,
            x_max,
            v_min,
            v_max,
            dx,
            dv,
            x,
            v,
            kx,
            kv,
        })
    }

    /// Number of grid points, the dimension of flattened fields.
    pub fn len(&self) -> usize {
        self.nx * self.nv
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flattened index in x-major order.
    pub fn flat_index(&self, ix: usize, iv: usize) -> usize {
        ix * self.nv + iv
    }

    /// Phase-space cell area of the (x, v) representation.
    pub fn cell_area(&self) -> f64 {
        self.dx * self.dv
    }

    /// Wavenumber spacing conjugate to x.
    pub fn dkx(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.nx as f64 * self.dx)
    }

    /// Wavenumber spacing conjugate to v.
    pub fn dkv(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.nv as f64 * self.dv)
    }

    /// True when two grids discretize the same domain identically.
    pub fn same_layout(&self, other: &PhaseSpaceGrid) -> bool {
        self.nx == other.nx
            && self.nv == other.nv
            && self.x_min == other.x_min
            && self.x_max == other.x_max
            && self.v_min == other.v_min
            && self.v_max == other.v_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn spacings_match_domain() {
        let g = PhaseSpaceGrid::new(64, 64, -8.0, 8.0, -8.0, 8.0).unwrap();
        assert_eq!(g.dx, 0.25);
        assert_eq!(g.dv, 0.25);

        let g = PhaseSpaceGrid::new(8, 8, 0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(g.dx, 0.125);
    }

    #[test]
    fn rejects_non_power_of_two() {
        let err = PhaseSpaceGrid::new(63, 64, -8.0, 8.0, -8.0, 8.0).unwrap_err();
        assert!(err.to_string().contains("not a power of two"));
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(PhaseSpaceGrid::new(16, 16, 8.0, -8.0, -8.0, 8.0).is_err());
        assert!(PhaseSpaceGrid::new(16, 16, -8.0, 8.0, 3.0, 3.0).is_err());
    }

    #[test]
    fn rejects_tiny_axes() {
        assert!(PhaseSpaceGrid::new(4, 16, -8.0, 8.0, -8.0, 8.0).is_err());
    }

    #[test]
    fn wavenumber_layout_spans_half_open_pi() {
        let g = PhaseSpaceGrid::new(16, 16, -8.0, 8.0, -8.0, 8.0).unwrap();
        let max = g.kx.iter().cloned().fold(f64::MIN, f64::max);
        let min = g.kx.iter().cloned().fold(f64::MAX, f64::min);
        // Nyquist carries the positive sign: kx*dx in (-pi, pi].
        assert!((max * g.dx - PI).abs() < 1e-14);
        assert!(min * g.dx > -PI);
        assert_eq!(g.kx[0], 0.0);
    }
}
