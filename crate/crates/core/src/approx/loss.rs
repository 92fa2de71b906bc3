use serde::Serialize;

use super::{Candidate, TargetFn};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LossReport {
    pub interval: (f64, f64),
    pub grid_points: usize,
    pub k: u32,
    /// `+inf` when any sample was non-finite.
    pub loss: f64,
    pub max_residual: f64,
    pub non_finite: bool,
    /// `(x, g^k(x), f(x))` at each midpoint.
    pub residual_samples: Vec<(f64, f64, f64)>,
}

/// Midpoints and target values for repeated scoring against one `f`.
#[derive(Debug, Clone)]
pub struct LossGrid {
    interval: (f64, f64),
    k: u32,
    dx: f64,
    xs: Vec<f64>,
    fs: Vec<f64>,
}

impl LossGrid {
    pub fn new(f: &TargetFn, k: u32, grid: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidConfig("iterate order k must be at least 1".into()));
        }
        if grid < 2 {
            return Err(Error::InvalidConfig(format!("loss grid needs at least 2 cells, got {grid}")));
        }
        let (a, b) = f.domain();
        let dx = (b - a) / grid as f64;
        let xs: Vec<f64> = (0..grid).map(|i| a + (i as f64 + 0.5) * dx).collect();
        let fs = xs.iter().map(|&x| f.eval(x)).collect();
        Ok(LossGrid { interval: (a, b), k, dx, xs, fs })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Loss of `g` without building a report; `+inf` on any non-finite value.
    pub fn score(&self, g: impl Fn(f64) -> f64) -> f64 {
        let mut sum = 0.0;
        for (&x, &fx) in self.xs.iter().zip(&self.fs) {
            let gk = (0..self.k).fold(x, |acc, _| g(acc));
            let r = gk - fx;
            sum += r * r;
        }
        let loss = sum * self.dx;
        if loss.is_finite() {
            loss
        } else {
            f64::INFINITY
        }
    }

    pub fn report(&self, g: impl Fn(f64) -> f64) -> LossReport {
        let mut sum = 0.0;
        let mut max_residual: f64 = 0.0;
        let mut samples = Vec::with_capacity(self.xs.len());
        for (&x, &fx) in self.xs.iter().zip(&self.fs) {
            let gk = (0..self.k).fold(x, |acc, _| g(acc));
            let r = gk - fx;
            sum += r * r;
            max_residual = max_residual.max(r.abs());
            samples.push((x, gk, fx));
        }
        let loss = sum * self.dx;
        let non_finite = !loss.is_finite() || samples.iter().any(|s| !s.1.is_finite());
        LossReport {
            interval: self.interval,
            grid_points: self.xs.len(),
            k: self.k,
            loss: if non_finite { f64::INFINITY } else { loss },
            max_residual: if non_finite { f64::INFINITY } else { max_residual },
            non_finite,
            residual_samples: samples,
        }
    }
}

/// Midpoint Riemann sum of `(g^k(x) - f(x))^2` over `f`'s interval.
pub fn riemann_loss(g: &Candidate, f: &TargetFn, k: u32, grid: usize) -> Result<LossReport> {
    Ok(LossGrid::new(f, k, grid)?.report(|x| g.eval(x)))
}
