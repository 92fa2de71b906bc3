use serde::Serialize;

use crate::numeric::PowerSeries;
use crate::{Error, Result};

/// Maclaurin half-iterate `g` of a target with a parabolic fixed point at 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSeries {
    pub target: PowerSeries,
    pub half: PowerSeries,
    pub order: usize,
}

impl FixedPointSeries {
    /// Largest coefficient of `g∘g - target` through `order`.
    pub fn composition_residual(&self) -> f64 {
        let gg = self.half.compose(&self.half, self.order).expect("half is centred at its own fixed point");
        (0..=self.order).map(|k| (gg.coeff(k) - self.target.coeff(k)).abs()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.half.eval(x)
    }
}

/// Solves for `g` with `g(g(x)) = target(x)` through degree `order`.
///
/// With `g = x + a_2 x^2 + ...`, the coefficient of `x^m` in `g∘g` is
/// `2 a_m` plus terms in lower coefficients only, so each `a_m` is a scalar
/// solve against the composition of the already-known part.
pub fn fixed_point_half_series(target: &PowerSeries, order: usize) -> Result<FixedPointSeries> {
    if target.center() != 0.0 {
        return Err(Error::Domain(format!("target must be centred at 0, got {}", target.center())));
    }
    let (c0, c1) = (target.coeff(0), target.coeff(1));
    if c0 != 0.0 || c1 != 1.0 {
        return Err(Error::UnsupportedFixedPoint { c0, c1 });
    }
    let order = order.max(1);
    let mut coeffs = vec![0.0; order + 1];
    coeffs[1] = 1.0;
    for m in 2..=order {
        let partial = PowerSeries::new(0.0, coeffs[..m].to_vec())?;
        let gg = partial.compose(&partial, m)?;
        coeffs[m] = (target.coeff(m) - gg.coeff(m)) / 2.0;
    }
    Ok(FixedPointSeries { target: target.truncated(order), half: PowerSeries::new(0.0, coeffs)?, order })
}
