use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Knobs shared by the functional-root solvers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Midpoint cells in the loss quadrature.
    pub grid_points: usize,
    pub generations: usize,
    pub population: usize,
    pub elite_fraction: f64,
    /// Initial mutation scale.
    pub temperature: f64,
    /// Per-generation multiplier applied to `temperature`.
    pub temperature_decay: f64,
    /// Additive-correction step.
    pub tau: f64,
    pub additive_iterations: usize,
    /// Knots used by additive correction to resample its spline.
    pub spline_knots: usize,
    pub ica_rounds: usize,
    /// Points per axis of the ICA grid search.
    pub ica_grid: usize,
    pub chain_len: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid_points: 512,
            generations: 2000,
            population: 200,
            elite_fraction: 0.1,
            temperature: 0.5,
            temperature_decay: 0.995,
            tau: 0.3,
            additive_iterations: 500,
            spline_knots: 129,
            ica_rounds: 8,
            ica_grid: 9,
            chain_len: 8,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.grid_points < 2 {
            return bad("grid_points must be at least 2");
        }
        if self.generations == 0 || self.population == 0 || self.additive_iterations == 0 || self.ica_rounds == 0 {
            return bad("iteration counts and population must be positive");
        }
        if !(self.elite_fraction > 0.0 && self.elite_fraction < 1.0) {
            return bad("elite_fraction must lie in (0, 1)");
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return bad("temperature must be positive");
        }
        if !(self.temperature_decay > 0.0 && self.temperature_decay <= 1.0) {
            return bad("temperature_decay must lie in (0, 1]");
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad("tau must be positive");
        }
        if self.spline_knots < 2 || self.ica_grid < 2 || self.chain_len == 0 {
            return bad("spline_knots and ica_grid must be at least 2, chain_len positive");
        }
        Ok(())
    }

    pub fn elite_count(&self) -> usize {
        ((self.elite_fraction * self.population as f64).ceil() as usize).clamp(1, self.population)
    }
}
