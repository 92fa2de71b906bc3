use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// The known function `f` and the interval the root is fitted on.
#[derive(Clone)]
pub struct TargetFn {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
    domain: (f64, f64),
}

impl fmt::Debug for TargetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFn").field("label", &self.label).field("domain", &self.domain).finish()
    }
}

impl TargetFn {
    pub fn new(
        label: impl Into<String>,
        domain: (f64, f64),
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let (a, b) = domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!("target interval must satisfy a < b, got [{a}, {b}]")));
        }
        Ok(TargetFn { eval: Arc::new(eval), label: label.into(), domain })
    }

    pub fn sin() -> Self {
        Self::new("sin", (-std::f64::consts::PI, std::f64::consts::PI), f64::sin).expect("valid interval")
    }

    pub fn exp() -> Self {
        Self::new("exp", (-1.0, 1.0), f64::exp).expect("valid interval")
    }

    /// `x + 1`, whose exact half-iterate is `x + 1/2`.
    pub fn shift() -> Self {
        Self::new("shift", (0.0, 3.0), |x| x + 1.0).expect("valid interval")
    }

    /// `1 + x^2`.
    pub fn quad() -> Self {
        Self::new("quad", (-1.0, 1.0), |x| 1.0 + x * x).expect("valid interval")
    }

    pub fn with_domain(&self, domain: (f64, f64)) -> Result<Self> {
        let (a, b) = domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!("target interval must satisfy a < b, got [{a}, {b}]")));
        }
        Ok(TargetFn { eval: Arc::clone(&self.eval), label: self.label.clone(), domain })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }
}
