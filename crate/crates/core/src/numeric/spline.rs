use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Piecewise-linear interpolant through strictly increasing knots.
///
/// Outside the knot range the first or last segment is extended with its
/// own slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct LinearSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl LinearSpline {
    pub fn new(knots: &[(f64, f64)]) -> Result<Self> {
        let (xs, ys) = knots.iter().copied().unzip();
        Self::from_columns(xs, ys)
    }

    pub fn from_columns(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidKnots(format!("{} x values but {} y values", xs.len(), ys.len())));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidKnots("at least two knots are required".into()));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidKnots("knot coordinates must be finite".into()));
        }
        if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidKnots(format!(
                "x values not strictly increasing at index {}: {} then {}",
                i + 1,
                xs[i],
                xs[i + 1]
            )));
        }
        Ok(LinearSpline { xs, ys })
    }

    /// Samples `f` at `n` evenly spaced points of `[a, b]`.
    pub fn sample(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 2 || !(a < b) {
            return Err(Error::InvalidKnots(format!("cannot sample {n} knots on [{a}, {b}]")));
        }
        let step = (b - a) / (n - 1) as f64;
        let xs: Vec<f64> = (0..n).map(|i| if i + 1 == n { b } else { a + step * i as f64 }).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::from_columns(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Same abscissae, new ordinates.
    pub fn with_values(&self, ys: Vec<f64>) -> Result<Self> {
        Self::from_columns(self.xs.clone(), ys)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let seg = segment(&self.xs, x);
        lerp(self.xs[seg], self.ys[seg], self.xs[seg + 1], self.ys[seg + 1], x)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.ys.windows(2).all(|w| w[1] > w[0])
    }

    /// Inverse of an increasing spline, with the same end-slope
    /// extrapolation. Returns `None` when the ordinates are not strictly
    /// increasing.
    pub fn inverse_eval(&self, y: f64) -> Option<f64> {
        if !self.is_strictly_increasing() {
            return None;
        }
        let seg = segment(&self.ys, y);
        Some(lerp(self.ys[seg], self.xs[seg], self.ys[seg + 1], self.xs[seg + 1], y))
    }
}

impl TryFrom<Vec<(f64, f64)>> for LinearSpline {
    type Error = Error;

    fn try_from(knots: Vec<(f64, f64)>) -> Result<Self> {
        LinearSpline::new(&knots)
    }
}

impl From<LinearSpline> for Vec<(f64, f64)> {
    fn from(s: LinearSpline) -> Self {
        s.knots().collect()
    }
}

// Index of the segment used for `x`, clamped to the end segments.
fn segment(xs: &[f64], x: f64) -> usize {
    let last = xs.len() - 2;
    match xs.partition_point(|&k| k <= x) {
        0 => 0,
        p => (p - 1).min(last),
    }
}

fn lerp(x0: f64, y0: f64, x1: f64, y1: f64, x: f64) -> f64 {
    if x == x0 {
        return y0;
    }
    if x == x1 {
        return y1;
    }
    y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_at_knots_and_linear_between() {
        let s = LinearSpline::new(&[(0.0, 1.0), (1.0, 3.0), (3.0, 4.0)]).unwrap();
        assert_eq!(s.eval(0.0), 1.0);
        assert_eq!(s.eval(1.0), 3.0);
        assert_eq!(s.eval(3.0), 4.0);
        assert_eq!(s.eval(0.5), 2.0);
        assert_eq!(s.eval(2.0), 3.5);
    }

    #[test]
    fn extrapolates_with_end_slopes() {
        let s = LinearSpline::new(&[(0.0, 0.0), (1.0, 2.0), (2.0, 2.5)]).unwrap();
        assert_eq!(s.eval(-1.0), -2.0);
        assert_eq!(s.eval(4.0), 3.5);
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(LinearSpline::new(&[(0.0, 0.0)]).is_err());
        assert!(LinearSpline::new(&[(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(LinearSpline::new(&[(1.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(LinearSpline::new(&[(0.0, f64::INFINITY), (1.0, 1.0)]).is_err());
    }

    #[test]
    fn inverse_round_trips() {
        let s = LinearSpline::new(&[(0.0, 1.0), (0.5, 1.2), (1.0, 2.0)]).unwrap();
        for y in [0.5, 1.0, 1.1, 1.6, 2.0, 3.0] {
            let x = s.inverse_eval(y).unwrap();
            assert!((s.eval(x) - y).abs() < 1e-14);
        }
        let bumpy = LinearSpline::new(&[(0.0, 1.0), (1.0, 0.0), (2.0, 2.0)]).unwrap();
        assert!(bumpy.inverse_eval(0.5).is_none());
    }

    #[test]
    fn serde_as_knot_list() {
        let s = LinearSpline::new(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[[0.0,1.0],[1.0,2.0]]");
        let back: LinearSpline = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<LinearSpline>("[[1.0,0.0],[0.0,1.0]]").is_err());
    }

    proptest! {
        #[test]
        fn monotone_knots_give_monotone_spline(
            steps in prop::collection::vec((0.01f64..2.0, 0.0f64..3.0), 2..20),
            probes in prop::collection::vec(0.0f64..1.0, 2..40),
        ) {
            let mut x = 0.0;
            let mut y = 0.0;
            let knots: Vec<(f64, f64)> = steps.iter().map(|&(dx, dy)| { x += dx; y += dy; (x, y) }).collect();
            let s = LinearSpline::new(&knots).unwrap();
            for &(kx, ky) in &knots {
                prop_assert_eq!(s.eval(kx), ky);
            }
            let (a, b) = s.domain();
            let mut pts: Vec<f64> = probes.iter().map(|t| a + t * (b - a)).collect();
            pts.sort_by(f64::total_cmp);
            for w in pts.windows(2) {
                prop_assert!(s.eval(w[1]) >= s.eval(w[0]) - 1e-12);
            }
        }
    }
}
