//! Piecewise half-exponential built from a seed on a fundamental interval.
//!
//! Any increasing solution of `f(f(x)) = e^x` has `c = f(0)` in `(0, 1)` and
//! maps `[0, c]` onto `[c, 1]`. Choosing that seed `phi` freely determines
//! `f` everywhere else through the equation itself:
//!
//! ```text
//! f(x) = phi(x)            0 <= x <= c
//! f(x) = exp(f^-1(x))      x > c
//! f(x) = f^-1(e^x)         x < 0
//! ```
//!
//! with `f^-1(y) = f(ln y)` for `y > 1` and `f^-1(y) = ln f(y)` for `y < c`.
//! Every branch descends towards the seed in finitely many steps.

use serde::Serialize;

use crate::numeric::LinearSpline;
use crate::superlog::{IterateOrder, SlogEnv};
use crate::{Error, Result};

/// Number of seed knots when the seed is sampled from a super-logarithm.
pub const DEFAULT_SEED_KNOTS: usize = 64;

const KNOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseSolution {
    /// `c = f(0)`.
    fundamental_point: f64,
    /// Increasing seed from `(0, c)` to `(c, 1)`.
    seed: LinearSpline,
}

/// Builds a piecewise solution.
///
/// With explicit `knots` the seed must run from `(0, c)` to `(c, 1)` with
/// strictly increasing coordinates. Otherwise the seed samples the half
/// iterate of `env` (base `e` only) on `[0, exp^(1/2)(0)]`, or falls back to
/// the affine seed `x + 1/2` on `[0, 1/2]`.
pub fn piecewise_solution(knots: Option<&[(f64, f64)]>, env: Option<&SlogEnv>) -> Result<PiecewiseSolution> {
    match (knots, env) {
        (Some(k), _) => PiecewiseSolution::from_knots(k),
        (None, Some(env)) => PiecewiseSolution::from_env(env),
        (None, None) => PiecewiseSolution::from_knots(&[(0.0, 0.5), (0.5, 1.0)]),
    }
}

impl PiecewiseSolution {
    pub fn from_knots(knots: &[(f64, f64)]) -> Result<Self> {
        let seed = LinearSpline::new(knots)?;
        if !seed.is_strictly_increasing() {
            return Err(Error::InvalidKnots("seed values must be strictly increasing".into()));
        }
        let (x0, c) = seed.domain();
        let (y0, y1) = (seed.ys()[0], seed.ys()[seed.len() - 1]);
        if x0 != 0.0 {
            return Err(Error::InvalidKnots(format!("seed must start at x = 0, got {x0}")));
        }
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidKnots(format!("fundamental point must lie in (0, 1), got {c}")));
        }
        if (y0 - c).abs() > KNOT_TOLERANCE || (y1 - 1.0).abs() > KNOT_TOLERANCE {
            return Err(Error::InvalidKnots(format!(
                "seed must map [0, {c}] onto [{c}, 1], got [{y0}, {y1}]"
            )));
        }
        let mut ys = seed.ys().to_vec();
        let last = ys.len() - 1;
        ys[0] = c;
        ys[last] = 1.0;
        Ok(PiecewiseSolution { fundamental_point: c, seed: seed.with_values(ys)? })
    }

    pub fn from_env(env: &SlogEnv) -> Result<Self> {
        if env.base() != std::f64::consts::E {
            return Err(Error::Domain(format!("seed sampling needs a base-e env, got base {}", env.base())));
        }
        let half = IterateOrder::new(0.5)?;
        let c = env.iterate(half, 0.0)?;
        let n = DEFAULT_SEED_KNOTS;
        let mut knots = Vec::with_capacity(n);
        for i in 0..n {
            let x = if i + 1 == n { c } else { c * i as f64 / (n - 1) as f64 };
            let y = if i == 0 {
                c
            } else if i + 1 == n {
                1.0
            } else {
                env.iterate(half, x)?
            };
            knots.push((x, y));
        }
        Self::from_knots(&knots)
    }

    pub fn fundamental_point(&self) -> f64 {
        self.fundamental_point
    }

    pub fn seed(&self) -> &LinearSpline {
        &self.seed
    }

    /// Lower bound of the image, `ln c`.
    pub fn infimum(&self) -> f64 {
        self.fundamental_point.ln()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("piecewise solution needs finite x, got {x}")));
        }
        let c = self.fundamental_point;
        if (0.0..=c).contains(&x) {
            Ok(self.seed.eval(x))
        } else if x > c {
            let v = self.inverse(x)?.exp();
            if !v.is_finite() {
                return Err(Error::Overflow(format!("f({x}) exceeds f64 range")));
            }
            Ok(v)
        } else {
            self.inverse(x.exp())
        }
    }

    /// `f^-1(y)`, defined for `y` above [`infimum`](Self::infimum).
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::Domain(format!("inverse needs finite y, got {y}")));
        }
        let c = self.fundamental_point;
        if (c..=1.0).contains(&y) {
            Ok(self.seed.inverse_eval(y).expect("seed is strictly increasing"))
        } else if y > 1.0 {
            self.eval(y.ln())
        } else {
            let fy = self.eval(y)?;
            if fy <= 0.0 {
                return Err(Error::BranchDomain(format!(
                    "f^-1({y}) is undefined: y lies below the image of f (inf = {})",
                    self.infimum()
                )));
            }
            Ok(fy.ln())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlog::{prepare, DEFAULT_ORDER};
    use std::f64::consts::E;

    fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
    }

    fn max_residual(f: &PiecewiseSolution, a: f64, b: f64) -> f64 {
        grid(a, b, 201)
            .map(|x| (f.eval(f.eval(x).unwrap()).unwrap() - x.exp()).abs() / x.exp())
            .fold(0.0, f64::max)
    }

    #[test]
    fn affine_default_endpoints() {
        let f = piecewise_solution(None, None).unwrap();
        assert_eq!(f.fundamental_point(), 0.5);
        assert_eq!(f.eval(0.0).unwrap(), 0.5);
        assert_eq!(f.eval(0.5).unwrap(), 1.0);
        assert!((f.eval(f.eval(0.0).unwrap()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn affine_default_satisfies_equation() {
        let f = piecewise_solution(None, None).unwrap();
        assert!(max_residual(&f, 0.0, 1.0) <= 1e-12);
        assert!(max_residual(&f, -4.0, 3.0) <= 1e-12);
    }

    #[test]
    fn increasing_and_bounded_below() {
        let f = piecewise_solution(None, None).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for x in grid(-8.0, 3.0, 500) {
            let v = f.eval(x).unwrap();
            assert!(v > prev, "not increasing at {x}");
            assert!(v > f.infimum());
            prev = v;
        }
    }

    #[test]
    fn slog_seed_tracks_half_iterate() {
        let env = prepare(E, DEFAULT_ORDER).unwrap();
        let f = piecewise_solution(None, Some(&env)).unwrap();
        assert!(max_residual(&f, 0.0, 1.0) <= 1e-3);
        let half = IterateOrder::new(0.5).unwrap();
        for x in grid(-2.0, 2.5, 91) {
            let exact = env.iterate(half, x).unwrap();
            assert!((f.eval(x).unwrap() - exact).abs() <= 1e-3 * (1.0 + exact.abs()), "x = {x}");
        }
    }

    #[test]
    fn below_image_is_a_branch_error() {
        let f = piecewise_solution(None, None).unwrap();
        // inf f = ln 0.5, so f^-1 is undefined further down.
        assert!(matches!(f.inverse(-2.0), Err(Error::BranchDomain(_))));
        assert!(f.inverse(-0.5).is_ok());
    }

    #[test]
    fn rejects_invalid_knots() {
        assert!(PiecewiseSolution::from_knots(&[(0.0, 1.0), (1.0, E)]).is_err());
        assert!(PiecewiseSolution::from_knots(&[(0.0, 0.4), (0.4, 0.9)]).is_err());
        assert!(PiecewiseSolution::from_knots(&[(0.0, 0.5), (0.25, 0.4), (0.5, 1.0)]).is_err());
        assert!(PiecewiseSolution::from_knots(&[(0.1, 0.5), (0.5, 1.0)]).is_err());
        let custom = PiecewiseSolution::from_knots(&[(0.0, 0.3), (0.1, 0.5), (0.3, 1.0)]).unwrap();
        assert!(max_residual(&custom, -3.0, 2.0) <= 1e-12);
    }

    #[test]
    fn exports_knots_as_json() {
        let f = piecewise_solution(None, None).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["fundamental_point"], 0.5);
        assert_eq!(v["seed"][1][1], 1.0);
    }
}
