//! Conservative one-dimensional potentials with analytic force data.
//!
//! Each closed-form kind supplies the potential `phi(x)`, the force
//! `F(x) = -phi'(x)`, and the force derivative `F'(x)` by analytic
//! differentiation. The tabulated kind carries explicit sample tables and
//! interpolates linearly; its force-derivative table is optional.

use serde::{Deserialize, Serialize};

use crate::error::{KvnError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    Free,
    /// `phi(x) = omega^2 x^2 / 2`; the oscillation frequency is `omega` for
    /// unit mass.
    Harmonic { omega: f64 },
    /// `phi(x) = a4 x^4 / 4`, so `F(x) = -a4 x^3`.
    Quartic { a4: f64 },
    /// `phi(x) = sum_k coeffs[k] x^k`.
    Polynomial { coeffs: Vec<f64> },
    /// Explicit sample tables on an increasing abscissa; evaluation clamps to
    /// the table range and interpolates linearly between samples.
    Tabulated {
        x: Vec<f64>,
        phi: Vec<f64>,
        force: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        force_prime: Option<Vec<f64>>,
    },
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    let i = match xs.binary_search_by(|probe| probe.partial_cmp(&x).unwrap()) {
        Ok(i) => return ys[i],
        Err(i) => i - 1,
    };
    let w = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] * (1.0 - w) + ys[i + 1] * w
}

impl PotentialSpec {
    pub fn phi(&self, x: f64) -> f64 {
        match self {
            PotentialSpec::Free => 0.0,
            PotentialSpec::Harmonic { omega } => 0.5 * omega * omega * x * x,
            PotentialSpec::Quartic { a4 } => 0.25 * a4 * x.powi(4),
            PotentialSpec::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
            }
            PotentialSpec::Tabulated { x: xs, phi, .. } => interp(xs, phi, x),
        }
    }

    /// Force `F(x) = -d(phi)/dx`.
    pub fn force(&self, x: f64) -> f64 {
        match self {
            PotentialSpec::Free => 0.0,
            PotentialSpec::Harmonic { omega } => -omega * omega * x,
            PotentialSpec::Quartic { a4 } => -a4 * x.powi(3),
            PotentialSpec::Polynomial { coeffs } => {
                let mut acc = 0.0;
                for (k, &c) in coeffs.iter().enumerate().skip(1).rev() {
                    acc = acc * x + k as f64 * c;
                }
                -acc
            }
            PotentialSpec::Tabulated { x: xs, force, .. } => interp(xs, force, x),
        }
    }

    /// Derivative of the force, `F'(x)`; drives the tangent (lambda) dynamics.
    pub fn force_prime(&self, x: f64) -> Result<f64> {
        match self {
            PotentialSpec::Free => Ok(0.0),
            PotentialSpec::Harmonic { omega } => Ok(-omega * omega),
            PotentialSpec::Quartic { a4 } => Ok(-3.0 * a4 * x * x),
            PotentialSpec::Polynomial { coeffs } => {
                let mut acc = 0.0;
                for (k, &c) in coeffs.iter().enumerate().skip(2).rev() {
                    acc = acc * x + (k * (k - 1)) as f64 * c;
                }
                Ok(-acc)
            }
            PotentialSpec::Tabulated {
                x: xs, force_prime, ..
            } => match force_prime {
                Some(table) => Ok(interp(xs, table, x)),
                None => Err(KvnError::MissingForcePrime),
            },
        }
    }

    /// Short label used in reports and operator names.
    pub fn label(&self) -> String {
        match self {
            PotentialSpec::Free => "free".into(),
            PotentialSpec::Harmonic { omega } => format!("harmonic(omega={omega})"),
            PotentialSpec::Quartic { a4 } => format!("quartic(a4={a4})"),
            PotentialSpec::Polynomial { coeffs } => format!("polynomial(deg={})", coeffs.len().saturating_sub(1)),
            PotentialSpec::Tabulated { x, .. } => format!("tabulated({} samples)", x.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_force_is_minus_gradient() {
        let p = PotentialSpec::Harmonic { omega: 2.0 };
        assert_eq!(p.phi(1.5), 0.5 * 4.0 * 2.25);
        assert_eq!(p.force(1.5), -4.0 * 1.5);
        assert_eq!(p.force_prime(1.5).unwrap(), -4.0);
    }

    #[test]
    fn quartic_force_is_cubic() {
        let p = PotentialSpec::Quartic { a4: 1.0 };
        assert_eq!(p.force(2.0), -8.0);
        assert_eq!(p.force_prime(2.0).unwrap(), -12.0);
    }

    #[test]
    fn polynomial_matches_finite_differences() {
        let p = PotentialSpec::Polynomial {
            coeffs: vec![0.3, -1.0, 0.5, 0.25],
        };
        let h = 1e-6;
        for &x in &[-1.2, 0.0, 0.7, 2.3] {
            let fd_force = -(p.phi(x + h) - p.phi(x - h)) / (2.0 * h);
            assert!((p.force(x) - fd_force).abs() < 1e-7);
            let fd_fp = (p.force(x + h) - p.force(x - h)) / (2.0 * h);
            assert!((p.force_prime(x).unwrap() - fd_fp).abs() < 1e-6);
        }
    }

    #[test]
    fn tabulated_interpolates_and_clamps() {
        let xs = vec![0.0, 1.0, 2.0];
        let p = PotentialSpec::Tabulated {
            x: xs.clone(),
            phi: vec![0.0, 1.0, 4.0],
            force: vec![0.0, -2.0, -4.0],
            force_prime: None,
        };
        assert_eq!(p.phi(0.5), 0.5);
        assert_eq!(p.force(1.5), -3.0);
        assert_eq!(p.phi(-1.0), 0.0);
        assert_eq!(p.phi(5.0), 4.0);
        assert!(matches!(
            p.force_prime(1.0),
            Err(KvnError::MissingForcePrime)
        ));
    }
}
