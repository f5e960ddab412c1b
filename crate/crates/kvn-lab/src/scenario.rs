//! JSON scenario configuration with defaults and guard validation.

use serde::{Deserialize, Serialize};

use crate::error::{KvnError, Result};
use crate::grid::PhaseSpaceGrid;
use crate::potential::PotentialSpec;
use crate::wavefunction::WaveFunction;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub nv: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            nx: 256,
            nv: 256,
            x_min: -8.0,
            x_max: 8.0,
            v_min: -8.0,
            v_max: 8.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InitialState {
    pub x0: f64,
    pub v0: f64,
    pub sigma_x: f64,
    pub sigma_v: f64,
    /// Initial multiplier data for extended (trajectory/action) runs; the
    /// dynamics leave them free, so they default to the reference choice
    /// `lambda_x = 0`, `lambda_v = 1` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_x0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_v0: Option<f64>,
}

impl Default for InitialState {
    fn default() -> Self {
        Self {
            x0: 1.0,
            v0: 0.0,
            sigma_x: 0.5,
            sigma_v: 0.5,
            lambda_x0: None,
            lambda_v0: None,
        }
    }
}

/// One self-contained scenario: mass, potential, grid, initial packet, and
/// time stepping. Missing fields take the documented defaults (harmonic
/// potential, 256x256 grid over [-8, 8)^2, dt = 0.005).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub mass: f64,
    pub potential: PotentialSpec,
    pub grid: GridConfig,
    pub initial: InitialState,
    pub dt: f64,
    pub steps: usize,
    pub record_every: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            potential: PotentialSpec::Harmonic { omega: 1.0 },
            grid: GridConfig::default(),
            initial: InitialState::default(),
            dt: 0.005,
            steps: 1000,
            record_every: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn build_grid(&self) -> Result<PhaseSpaceGrid> {
        PhaseSpaceGrid::new(
            self.grid.nx,
            self.grid.nv,
            self.grid.x_min,
            self.grid.x_max,
            self.grid.v_min,
            self.grid.v_max,
        )
    }

    pub fn build_packet(&self, grid: &PhaseSpaceGrid) -> Result<WaveFunction> {
        WaveFunction::gaussian_packet(
            grid,
            self.initial.x0,
            self.initial.v0,
            self.initial.sigma_x,
            self.initial.sigma_v,
        )
    }

    pub fn lambda_x0(&self) -> f64 {
        self.initial.lambda_x0.unwrap_or(0.0)
    }

    pub fn lambda_v0(&self) -> f64 {
        self.initial.lambda_v0.unwrap_or(1.0)
    }

    pub fn t_final(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    /// Everything except the packet guards: mass, stepping, potential
    /// tables, and the grid itself. Subcommands that build a packet apply
    /// the width/interior guards on top (see [`Self::validate`]).
    pub fn validate_base(&self) -> Result<()> {
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(KvnError::Config {
                field: "mass".into(),
                message: format!("must be positive and finite, got {}", self.mass),
            });
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(KvnError::Config {
                field: "dt".into(),
                message: format!("must be positive and finite, got {}", self.dt),
            });
        }
        if self.steps == 0 {
            return Err(KvnError::Config {
                field: "steps".into(),
                message: "must be at least 1".into(),
            });
        }
        if self.record_every == 0 {
            return Err(KvnError::Config {
                field: "record_every".into(),
                message: "must be at least 1".into(),
            });
        }
        if let PotentialSpec::Tabulated { x, phi, force, force_prime } = &self.potential {
            let ok = x.len() >= 2
                && phi.len() == x.len()
                && force.len() == x.len()
                && force_prime.as_ref().map_or(true, |fp| fp.len() == x.len())
                && x.windows(2).all(|w| w[1] > w[0]);
            if !ok {
                return Err(KvnError::Config {
                    field: "potential".into(),
                    message: "tabulated potential needs >= 2 strictly increasing abscissas and \
                              equal-length value tables"
                        .into(),
                });
            }
        }
        self.build_grid()?;
        Ok(())
    }

    /// Full validation including the Gaussian-packet guards; the error names
    /// the offending field.
    pub fn validate(&self) -> Result<()> {
        self.validate_base()?;
        let grid = self.build_grid()?;
        self.build_packet(&grid)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_documented_scenario() {
        let c = ScenarioConfig::default();
        assert_eq!(c.grid.nx, 256);
        assert_eq!(c.grid.nv, 256);
        assert_eq!(c.dt, 0.005);
        assert!(matches!(c.potential, PotentialSpec::Harmonic { .. }));
        c.validate().unwrap();
    }

    #[test]
    fn narrow_packet_is_named() {
        let mut c = ScenarioConfig::default();
        c.initial.sigma_x = 0.01;
        let err = c.validate().unwrap_err();
        assert!(err.to_string().contains("sigma_x"), "{err}");
    }

    #[test]
    fn bad_mass_is_named() {
        let mut c = ScenarioConfig::default();
        c.mass = -1.0;
        let err = c.validate().unwrap_err();
        assert!(err.to_string().contains("mass"));
    }
}
