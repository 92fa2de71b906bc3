use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Truncated Taylor expansion `sum c_k (x - center)^k`.
///
/// Coefficients past the stored length are treated as exact zeros, so a
/// short series such as the identity `[0, 1]` composes like a polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    center: f64,
    coeffs: Vec<f64>,
}

impl PowerSeries {
    pub fn new(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("power series needs at least one coefficient".into()));
        }
        if !center.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("power series entries must be finite".into()));
        }
        Ok(PowerSeries { center, coeffs })
    }

    /// The series `x` about zero.
    pub fn identity() -> Self {
        PowerSeries { center: 0.0, coeffs: vec![0.0, 1.0] }
    }

    /// Maclaurin series of `sin` through degree `order`.
    pub fn sin(order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        let mut term = 1.0;
        for k in (1..=order).step_by(2) {
            coeffs[k] = term;
            term = -term / (((k + 1) * (k + 2)) as f64);
        }
        PowerSeries { center: 0.0, coeffs }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Highest stored degree.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x - self.center;
        if t == 0.0 {
            return self.coeffs[0];
        }
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Series truncated (or zero-padded) to degree `order`.
    pub fn truncated(&self, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| self.coeff(k)).collect();
        PowerSeries { center: self.center, coeffs }
    }

    pub fn add(&self, other: &PowerSeries, order: usize) -> Result<Self> {
        self.check_same_center(other)?;
        let coeffs = (0..=order).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(PowerSeries { center: self.center, coeffs })
    }

    pub fn mul(&self, other: &PowerSeries, order: usize) -> Result<Self> {
        self.check_same_center(other)?;
        Ok(PowerSeries { center: self.center, coeffs: mul_trunc(&self.coeffs, &other.coeffs, order) })
    }

    /// Taylor coefficients of `self(inner(x))` about `inner.center`,
    /// truncated at degree `order`.
    pub fn compose(&self, inner: &PowerSeries, order: usize) -> Result<Self> {
        let c0 = inner.coeffs[0];
        if (c0 - self.center).abs() > 1e-12 * (1.0 + self.center.abs()) {
            return Err(Error::CenterMismatch { inner_c0: c0, outer_center: self.center });
        }
        // inner(x) - outer.center has no constant term, so Horner in the
        // shifted inner series only ever needs `order + 1` coefficients.
        let mut shifted: Vec<f64> = (0..=order).map(|k| inner.coeff(k)).collect();
        shifted[0] = 0.0;

        let top = self.coeffs.len().min(order + 1);
        let mut acc = vec![0.0; order + 1];
        for k in (0..top).rev() {
            acc = mul_trunc(&acc, &shifted, order);
            acc[0] += self.coeffs[k];
        }
        Ok(PowerSeries { center: inner.center, coeffs: acc })
    }

    fn check_same_center(&self, other: &PowerSeries) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch { inner_c0: other.center, outer_center: self.center });
        }
        Ok(())
    }
}

fn mul_trunc(a: &[f64], b: &[f64], order: usize) -> Vec<f64> {
    let mut out = vec![0.0; order + 1];
    for (i, &ai) in a.iter().enumerate().take(order + 1) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}
