//! Solutions of `y^(y^x) = E(x)` under the assumed form `y = e^(u(x))`.
//!
//! Substituting `z = u x` turns the equation into `z e^z = x ln E(x)`, so
//! `u = W(x ln E(x)) / x` and `y = (w / W(w))^(1/x)` with `w = x ln E(x)`.

use crate::numeric::lambert_w;
use crate::{Error, Result};

/// `f(x) = (x^2 / W(x^2))^(1/x)`, which satisfies `f(x)^(f(x)^x) = e^x`.
pub fn assumed_form(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("assumed_form needs finite x > 0, got {x}")));
    }
    from_log_target(x, x * x)
}

/// Generalisation to targets `E(x) = a(x) e^(b(x))`: returns `y` with
/// `y^(y^x) = a(x) e^(b(x))`, i.e. `w = x ln a(x) + x b(x)`.
///
/// With `a = 1` and `b(x) = x` this is [`assumed_form`].
pub fn assumed_form_general(a: impl Fn(f64) -> f64, b: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("assumed_form_general needs finite x > 0, got {x}")));
    }
    let ax = a(x);
    if !(ax > 0.0) {
        return Err(Error::Domain(format!("a(x) must be positive, got a({x}) = {ax}")));
    }
    let w = x * ax.ln() + x * b(x);
    from_log_target(x, w)
}

fn from_log_target(x: f64, w: f64) -> Result<f64> {
    if !w.is_finite() {
        return Err(Error::Domain(format!("Lambert W argument is not finite at x = {x}")));
    }
    let lw = lambert_w(w)?;
    if lw == 0.0 {
        // w / W(w) -> 1 as w -> 0.
        return Ok(1.0);
    }
    Ok((w / lw).powf(1.0 / x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    const OMEGA: f64 = 0.567_143_290_409_783_8;

    #[test]
    fn value_at_one() {
        let v = assumed_form(1.0).unwrap();
        assert!((v - 1.0 / OMEGA).abs() < 1e-14);
        assert!((v - 1.763_222_834_351_896_7).abs() < 1e-12);
        assert!((v.powf(v) - E).abs() < 1e-14);
    }

    #[test]
    fn identity_at_two() {
        let v = assumed_form(2.0).unwrap();
        assert!((v.powf(v * v) - E * E).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(assumed_form(0.0).is_err());
        assert!(assumed_form(-1.0).is_err());
        assert!(assumed_form_general(|_| -1.0, |x| x, 1.0).is_err());
    }

    #[test]
    fn general_reduces_to_plain_form() {
        for x in [0.1, 1.0, 2.5, 7.0] {
            let g = assumed_form_general(|_| 1.0, |t| t, x).unwrap();
            assert!((g - assumed_form(x).unwrap()).abs() < 1e-14 * g);
        }
    }

    #[test]
    fn general_for_x_exp_x() {
        let v = assumed_form_general(|t| t, |t| t, 1.0).unwrap();
        assert!((v - 1.0 / OMEGA).abs() < 1e-14);

        let x: f64 = 2.0;
        let w = 2.0 * 2f64.ln() + 4.0;
        let expected = (w / lambert_w(w).unwrap()).powf(0.5);
        let v = assumed_form_general(|t| t, |t| t, x).unwrap();
        assert!((v - expected).abs() < 1e-14);
        let target = x * x.exp();
        assert!((v.powf(v.powf(x)) - target).abs() < 1e-10 * target);
    }

    #[test]
    fn identity_on_log_grid() {
        for i in 0..100 {
            let x = 10f64.powf(-2.0 + 3.0 * (i + 1) as f64 / 100.0);
            let f = assumed_form(x).unwrap();
            let lhs = f.powf(f.powf(x));
            assert!((lhs - x.exp()).abs() / x.exp() <= 1e-10, "x = {x}");
        }
    }
}
