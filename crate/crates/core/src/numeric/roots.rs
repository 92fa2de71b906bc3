use crate::{Error, Result};

/// Residual tolerance: a root `r` is accepted once `|f(r)| <= 1e-13 (1 + |r|)`.
pub const ROOT_TOLERANCE: f64 = 1e-13;

const NEWTON_MAX_ITER: usize = 50;
const BISECTION_MAX_ITER: usize = 400;

fn accepted(x: f64, fx: f64) -> bool {
    fx.abs() <= ROOT_TOLERANCE * (1.0 + x.abs())
}

/// Newton's method with a central-difference derivative, falling back to
/// bisection on `bracket` when Newton stalls, diverges or leaves the bracket.
pub fn find_root(f: impl Fn(f64) -> f64, guess: f64, bracket: Option<(f64, f64)>) -> Result<f64> {
    let mut best = (guess, f64::INFINITY);
    let note = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx.abs() < best.1 {
            *best = (x, fx.abs());
        }
    };

    let in_bracket = |x: f64| bracket.is_none_or(|(lo, hi)| x >= lo.min(hi) && x <= hi.max(lo));
    let mut x = guess;
    if x.is_finite() && in_bracket(x) {
        for _ in 0..NEWTON_MAX_ITER {
            let fx = f(x);
            if !fx.is_finite() {
                break;
            }
            note(x, fx, &mut best);
            if accepted(x, fx) {
                return Ok(x);
            }
            let h = 1e-7 * (1.0 + x.abs());
            let slope = (f(x + h) - f(x - h)) / (2.0 * h);
            if !slope.is_finite() || slope == 0.0 {
                break;
            }
            let next = x - fx / slope;
            if !next.is_finite() || !in_bracket(next) {
                break;
            }
            x = next;
        }
    }

    if let Some((a, b)) = bracket {
        let (mut lo, mut hi) = (a.min(b), a.max(b));
        let (mut flo, fhi) = (f(lo), f(hi));
        note(lo, flo, &mut best);
        note(hi, fhi, &mut best);
        if accepted(lo, flo) {
            return Ok(lo);
        }
        if accepted(hi, fhi) {
            return Ok(hi);
        }
        if flo.signum() != fhi.signum() && flo.is_finite() && fhi.is_finite() {
            for _ in 0..BISECTION_MAX_ITER {
                let mid = lo + 0.5 * (hi - lo);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid);
                note(mid, fm, &mut best);
                if accepted(mid, fm) {
                    return Ok(mid);
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
        }
    }

    Err(Error::NoConvergence { best_x: best.0, residual: best.1 })
}
