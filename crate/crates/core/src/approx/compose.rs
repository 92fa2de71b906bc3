use super::{Candidate, FractionalMap, Repr};
use crate::numeric::LinearSpline;
use crate::{Error, Result};

pub const DEFAULT_COMPOSE_KNOTS: usize = 256;

/// `g_a ∘ g_b` as a spline on the common interval, with fraction
/// `1/a + 1/b`.
///
/// `interval` narrows the common interval and is required when neither map
/// carries a domain of its own.
pub fn compose_iterates(
    g_a: &impl FractionalMap,
    g_b: &impl FractionalMap,
    interval: Option<(f64, f64)>,
    knots: usize,
) -> Result<Candidate> {
    let (lo, hi) = [g_a.domain(), g_b.domain(), interval]
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(f64, f64)>, (a, b)| match acc {
            None => Some((a, b)),
            Some((lo, hi)) => Some((lo.max(a), hi.min(b))),
        })
        .ok_or(Error::EmptyDomain)?;
    if !(lo < hi) {
        return Err(Error::EmptyDomain);
    }
    let spline = LinearSpline::sample(|x| g_a.apply(g_b.apply(x)), lo, hi, knots.max(2))
        .map_err(|_| Error::Domain(format!("composition is not finite on [{lo}, {hi}]")))?;
    let fraction = g_a.fraction() + g_b.fraction();
    Candidate::new(Repr::Spline(spline), fraction.recip())
}
