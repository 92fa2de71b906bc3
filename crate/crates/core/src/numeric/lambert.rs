use crate::{Error, Result};

/// `-1/e`, the branch point of W.
pub const BRANCH_POINT: f64 = -0.36787944117144233;

/// Principal branch `W_0` of the Lambert W function: the `w >= -1` with
/// `w e^w = x`.
pub fn lambert_w(x: f64) -> Result<f64> {
    if x.is_nan() || x < BRANCH_POINT {
        return Err(Error::Domain(format!("lambert_w needs x >= -1/e, got {x}")));
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == BRANCH_POINT {
        return Ok(-1.0);
    }

    let mut w = if x >= 0.0 {
        x.ln_1p()
    } else {
        // Expansion in p = sqrt(2(e x + 1)) about the branch point.
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    };

    // Halley on f(w) = w e^w - x.
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let next = (w - f / denom).max(-1.0);
        let done = (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs());
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn known_values() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(E).unwrap() - 1.0).abs() < 1e-15);
        // Omega constant.
        assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert_eq!(lambert_w(BRANCH_POINT).unwrap(), -1.0);
    }

    #[test]
    fn omega_constant_against_independent_newton() {
        let mut w = 0.5f64;
        for _ in 0..60 {
            w -= (w * w.exp() - 1.0) / (w.exp() * (w + 1.0));
        }
        assert!((lambert_w(1.0).unwrap() - w).abs() < 1e-15);
    }

    #[test]
    fn domain_error_below_branch_point() {
        assert!(lambert_w(-0.5).is_err());
        assert!(lambert_w(f64::NAN).is_err());
    }

    #[test]
    fn identity_and_monotonicity_on_grid() {
        let lo = BRANCH_POINT + 1e-6;
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=2000 {
            let x = lo + (10.0 - lo) * i as f64 / 2000.0;
            let w = lambert_w(x).unwrap();
            assert!(w >= -1.0);
            assert!((w * w.exp() - x).abs() <= 1e-12 * (1.0 + x.abs()), "x = {x}");
            assert!(w > prev, "not increasing at x = {x}");
            prev = w;
        }
    }

    #[test]
    fn large_arguments() {
        for x in [1e3, 1e10, 1e100, 1e300] {
            let w = lambert_w(x).unwrap();
            assert!((w + w.ln() - x.ln()).abs() < 1e-12 * x.ln());
        }
    }
}
