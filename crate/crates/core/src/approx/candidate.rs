use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::numeric::LinearSpline;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReprKind {
    Fourier,
    Taylor,
    Spline,
}

impl std::str::FromStr for ReprKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(ReprKind::Fourier),
            "taylor" => Ok(ReprKind::Taylor),
            "spline" => Ok(ReprKind::Spline),
            other => Err(Error::InvalidConfig(format!("unknown representation {other:?}"))),
        }
    }
}

impl std::fmt::Display for ReprKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReprKind::Fourier => "fourier",
            ReprKind::Taylor => "taylor",
            ReprKind::Spline => "spline",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Repr {
    /// `sum a_j sin(j x)` for `j = 1..=n`.
    Fourier(Vec<f64>),
    /// `sum c_j x^j / j!` for `j = 0..=n`.
    Taylor(Vec<f64>),
    Spline(LinearSpline),
}

impl Repr {
    pub fn kind(&self) -> ReprKind {
        match self {
            Repr::Fourier(_) => ReprKind::Fourier,
            Repr::Taylor(_) => ReprKind::Taylor,
            Repr::Spline(_) => ReprKind::Spline,
        }
    }

    /// The free parameters: coefficients, or knot ordinates for a spline.
    pub fn params(&self) -> &[f64] {
        match self {
            Repr::Fourier(a) | Repr::Taylor(a) => a,
            Repr::Spline(s) => s.ys(),
        }
    }

    pub fn with_params(&self, params: Vec<f64>) -> Result<Repr> {
        Ok(match self {
            Repr::Fourier(_) => Repr::Fourier(params),
            Repr::Taylor(_) => Repr::Taylor(params),
            Repr::Spline(s) => Repr::Spline(s.with_values(params)?),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Repr::Fourier(a) => {
                // sin((j+1)x) = 2 cos(x) sin(jx) - sin((j-1)x)
                let (s, c) = x.sin_cos();
                let two_c = 2.0 * c;
                let (mut prev, mut cur) = (0.0, s);
                let mut acc = 0.0;
                for &aj in a {
                    acc += aj * cur;
                    let next = two_c * cur - prev;
                    prev = cur;
                    cur = next;
                }
                acc
            }
            Repr::Taylor(c) => {
                let mut acc = 0.0;
                for j in (0..c.len()).rev() {
                    acc = c[j] + acc * x / (j + 1) as f64;
                }
                acc
            }
            Repr::Spline(s) => s.eval(x),
        }
    }
}

/// A trial functional root `g` with `g^k = f`.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub repr: Repr,
    pub k: Ratio<i64>,
    /// Cached Riemann loss, when known.
    pub loss: Option<f64>,
}

impl Candidate {
    pub fn new(repr: Repr, k: Ratio<i64>) -> Result<Self> {
        if k <= Ratio::zero() {
            return Err(Error::InvalidConfig(format!("iterate order must be positive, got {k}")));
        }
        Ok(Candidate { repr, k, loss: None })
    }

    pub fn fourier(coeffs: Vec<f64>, k: i64) -> Result<Self> {
        Self::new(Repr::Fourier(coeffs), Ratio::from_integer(k))
    }

    pub fn taylor(coeffs: Vec<f64>, k: i64) -> Result<Self> {
        Self::new(Repr::Taylor(coeffs), Ratio::from_integer(k))
    }

    pub fn spline(spline: LinearSpline, k: i64) -> Result<Self> {
        Self::new(Repr::Spline(spline), Ratio::from_integer(k))
    }

    /// Identity spline on `[a, b]`.
    pub fn identity(domain: (f64, f64)) -> Result<Self> {
        let s = LinearSpline::new(&[(domain.0, domain.0), (domain.1, domain.1)])?;
        Self::new(Repr::Spline(s), Ratio::one())
    }

    pub fn kind(&self) -> ReprKind {
        self.repr.kind()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.repr.eval(x)
    }

    /// `g` applied `n` times.
    pub fn iterate(&self, n: u32, x: f64) -> f64 {
        (0..n).fold(x, |acc, _| self.repr.eval(acc))
    }

    /// Integer iterate order, if `k` is whole.
    pub fn integer_order(&self) -> Option<u32> {
        if self.k.is_integer() {
            u32::try_from(*self.k.numer()).ok()
        } else {
            None
        }
    }
}

/// A map standing for `f^fraction`, evaluable pointwise.
pub trait FractionalMap {
    fn apply(&self, x: f64) -> f64;
    fn fraction(&self) -> Ratio<i64>;
    /// Interval the map is trusted on, if it is restricted.
    fn domain(&self) -> Option<(f64, f64)> {
        None
    }
}

impl FractionalMap for Candidate {
    fn apply(&self, x: f64) -> f64 {
        self.eval(x)
    }

    fn fraction(&self) -> Ratio<i64> {
        self.k.recip()
    }

    fn domain(&self) -> Option<(f64, f64)> {
        match &self.repr {
            Repr::Spline(s) => Some(s.domain()),
            _ => None,
        }
    }
}

/// Adapts a closure, such as a superlog iterate, to [`FractionalMap`].
pub struct MapFn<F> {
    f: F,
    fraction: Ratio<i64>,
    domain: Option<(f64, f64)>,
}

impl<F: Fn(f64) -> f64> MapFn<F> {
    pub fn new(f: F, fraction: Ratio<i64>, domain: Option<(f64, f64)>) -> Self {
        MapFn { f, fraction, domain }
    }
}

impl<F: Fn(f64) -> f64> FractionalMap for MapFn<F> {
    fn apply(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn fraction(&self) -> Ratio<i64> {
        self.fraction
    }

    fn domain(&self) -> Option<(f64, f64)> {
        self.domain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fourier_matches_direct_sum() {
        let a = vec![0.7, -0.2, 0.05, 0.3];
        let g = Repr::Fourier(a.clone());
        for i in 0..50 {
            let x = -3.0 + 0.13 * i as f64;
            let direct: f64 = a.iter().enumerate().map(|(j, aj)| aj * ((j + 1) as f64 * x).sin()).sum();
            assert!((g.eval(x) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn taylor_uses_factorial_weights() {
        let g = Repr::Taylor(vec![1.0, 2.0, 6.0, 24.0]);
        let x = 0.5;
        assert!((g.eval(x) - (1.0 + 2.0 * x + 3.0 * x * x + 4.0 * x * x * x)).abs() < 1e-15);
        let e = Repr::Taylor(vec![1.0; 20]);
        assert!((e.eval(1.0) - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn iterate_applies_repeatedly() {
        let g = Candidate::taylor(vec![0.5, 1.0], 2).unwrap();
        assert_eq!(g.iterate(2, 1.0), 2.0);
        assert_eq!(g.iterate(0, 1.0), 1.0);
        assert_eq!(g.integer_order(), Some(2));
    }

    #[test]
    fn rejects_nonpositive_order() {
        assert!(Candidate::fourier(vec![1.0], 0).is_err());
        assert!(Candidate::new(Repr::Fourier(vec![1.0]), Ratio::new(-1, 2)).is_err());
    }

    #[test]
    fn params_round_trip() {
        let s = LinearSpline::new(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        let r = Repr::Spline(s);
        let r2 = r.with_params(vec![3.0, 4.0]).unwrap();
        assert_eq!(r2.params(), &[3.0, 4.0]);
        assert_eq!(r2.eval(0.5), 3.5);
        assert!(r.with_params(vec![1.0]).is_err());
    }

    #[test]
    fn fraction_is_reciprocal_order() {
        let g = Candidate::fourier(vec![1.0], 3).unwrap();
        assert_eq!(g.fraction(), Ratio::new(1, 3));
    }

    proptest! {
        #[test]
        fn fourier_is_odd(a in prop::collection::vec(-1.0f64..1.0, 1..10), x in -3.0f64..3.0) {
            let g = Repr::Fourier(a);
            prop_assert!((g.eval(-x) + g.eval(x)).abs() < 1e-12);
        }
    }
}
