//! Super-logarithm, real-height tetration and real-order iterates of
//! `E_b(x) = b^x`.
//!
//! Near the origin the super-logarithm is the truncated series
//!
//! ```text
//! S(z) = -1 + sum_{k=1..n} c_k z^k / k!
//! ```
//!
//! whose coefficients come from matching the first `n` Taylor coefficients
//! of `S(b^z) = S(z) + 1` about `z = 0`. That gives the linear system
//!
//! ```text
//! sum_k (k^j / k! - [j = k] (ln b)^-k) c_k = [j = 0],   j = 0..n-1
//! ```
//!
//! Everywhere else `slog` is reached by shifting the argument into `(0, 1]`
//! with `log_b` (each step adds one) or a single `b^z` step (subtracts one).
//! Tetration inverts `S` on `(0, 1]` and undoes the shifts, and the `n`-th
//! iterate is `tet(slog(x) + n)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numeric::{find_root, linear_solve, solve_rational, DenseMatrix, PowerSeries};
use crate::{Error, Result};

/// `e^(1/e)`; bases at or below it have a real fixed point and are excluded.
pub const MIN_BASE: f64 = 1.444_667_861_009_766;

pub const MAX_ORDER: usize = 60;

/// Order used when none is requested.
pub const DEFAULT_ORDER: usize = 30;

/// Orders below this skip the Abel residual gate.
pub const GATE_MIN_ORDER: usize = 10;

const GATE_SAMPLES: usize = 50;
const MAX_SHIFTS: usize = 1000;
const TET_CRIT_LOWER: f64 = 1e-9;

/// A prepared super-logarithm: base, truncation order and series
/// coefficients `c_1..c_n` (before the `1/k!` weighting).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EnvFile", into = "EnvFile")]
pub struct SlogEnv {
    base: f64,
    log_base: f64,
    coeffs: Vec<f64>,
    series: PowerSeries,
}

#[derive(Serialize, Deserialize)]
struct EnvFile {
    base: f64,
    order: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<EnvFile> for SlogEnv {
    type Error = Error;

    fn try_from(file: EnvFile) -> Result<Self> {
        if file.coeffs.len() != file.order {
            return Err(Error::Domain(format!(
                "env order {} but {} coefficients",
                file.order,
                file.coeffs.len()
            )));
        }
        SlogEnv::from_coeffs(file.base, file.coeffs)
    }
}

impl From<SlogEnv> for EnvFile {
    fn from(env: SlogEnv) -> Self {
        EnvFile { base: env.base, order: env.coeffs.len(), coeffs: env.coeffs }
    }
}

/// Real iteration order `n` of `E_b^n`; may be negative or fractional.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct IterateOrder(f64);

impl IterateOrder {
    pub fn new(n: f64) -> Result<Self> {
        if !n.is_finite() {
            return Err(Error::Domain(format!("iteration order must be finite, got {n}")));
        }
        Ok(IterateOrder(n))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Residuals of the Abel equation measured on a prepared environment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbelReport {
    /// `max |S(b^t) - S(t) - 1|` for the raw series, `t = z - 1`.
    pub local: f64,
    /// `max |slog(b^z) - slog(z) - 1|` through the global shifts.
    pub global: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl AbelReport {
    pub fn max_residual(&self) -> f64 {
        self.local.max(self.global)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() <= self.tolerance
    }
}

/// Diagnostics returned alongside a prepared environment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrepareReport {
    pub condition: f64,
    /// Whether the coefficients came from the exact rational solve.
    pub exact_solve: bool,
    pub abel: Option<AbelReport>,
}

/// Gate tolerance for a given truncation order.
///
/// Pinned at `1e-5` from order 30 up and loosened by a decade every five
/// orders below that, following the residuals observed for base `e`.
pub fn gate_tolerance(order: usize) -> f64 {
    if order >= DEFAULT_ORDER {
        1e-5
    } else {
        1e-5 * 10f64.powf((DEFAULT_ORDER - order) as f64 / 5.0)
    }
}

/// Builds and solves the coefficient system, then checks the Abel gate.
pub fn prepare(base: f64, order: usize) -> Result<SlogEnv> {
    prepare_with_report(base, order).map(|(env, _)| env)
}

pub fn prepare_with_report(base: f64, order: usize) -> Result<(SlogEnv, PrepareReport)> {
    check_base(base)?;
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::Domain(format!("order must be in 1..={MAX_ORDER}, got {order}")));
    }
    let log_base = base.ln();

    let matrix = DenseMatrix::from_fn(order, order, |j, col| {
        let k = col + 1;
        let mut v = (k as f64).powi(j as i32) / factorial(k);
        if j == k {
            v -= log_base.powi(-(k as i32));
        }
        v
    })?;
    let mut rhs = vec![0.0; order];
    rhs[0] = 1.0;
    // A float pivot failure on this badly scaled matrix says nothing about
    // the exact system, so it also routes to the rational solve.
    let (coeffs, condition, exact_solve) = match linear_solve(&matrix, &rhs) {
        Ok(s) if !s.ill_conditioned() => (s.x, s.condition, false),
        Ok(s) => (solve_exact(order, log_base)?, s.condition, true),
        Err(Error::Singular { .. }) => (solve_exact(order, log_base)?, f64::INFINITY, true),
        Err(e) => return Err(e),
    };

    let env = SlogEnv::from_coeffs(base, coeffs)?;
    let abel = if order >= GATE_MIN_ORDER {
        let report = env.abel_report();
        if !report.passed() {
            return Err(Error::AbelGate { order, residual: report.max_residual(), tolerance: report.tolerance });
        }
        Some(report)
    } else {
        None
    };
    Ok((env, PrepareReport { condition, exact_solve, abel }))
}

// The system is hopelessly conditioned in f64 past order ~15 (about 1e33 at
// order 30), so it is solved exactly with `ln b` taken at its f64 value.
fn solve_exact(order: usize, log_base: f64) -> Result<Vec<f64>> {
    let mut fact = BigInt::one();
    let mut facts = Vec::with_capacity(order);
    for k in 1..=order {
        fact *= k;
        facts.push(fact.clone());
    }
    let mut rows = Vec::with_capacity(order);
    for j in 0..order {
        let mut row = Vec::with_capacity(order);
        for k in 1..=order {
            let mut v = BigRational::new(BigInt::from(k).pow(j as u32), facts[k - 1].clone());
            if j == k {
                let diag = BigRational::from_float(log_base.powi(-(k as i32)))
                    .ok_or_else(|| Error::Domain("non-finite diagonal entry".into()))?;
                v -= diag;
            }
            row.push(v);
        }
        rows.push(row);
    }
    let mut rhs = vec![BigRational::zero(); order];
    rhs[0] = BigRational::one();
    let x = solve_rational(&rows, &rhs)?;
    Ok(x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
}

fn check_base(base: f64) -> Result<()> {
    if !base.is_finite() || base <= MIN_BASE {
        return Err(Error::Domain(format!("base must exceed e^(1/e) = {MIN_BASE}, got {base}")));
    }
    Ok(())
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl SlogEnv {
    /// Rebuilds an environment from stored coefficients without re-solving.
    /// Only structural checks are applied; see [`SlogEnv::abel_report`].
    pub fn from_coeffs(base: f64, coeffs: Vec<f64>) -> Result<Self> {
        check_base(base)?;
        if coeffs.is_empty() || coeffs.len() > MAX_ORDER {
            return Err(Error::Domain(format!("env needs 1..={MAX_ORDER} coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("env coefficients must be finite".into()));
        }
        let mut taylor = Vec::with_capacity(coeffs.len() + 1);
        taylor.push(-1.0);
        let mut fact = 1.0;
        for (i, c) in coeffs.iter().enumerate() {
            fact *= (i + 1) as f64;
            taylor.push(c / fact);
        }
        let series = PowerSeries::new(0.0, taylor)?;
        Ok(SlogEnv { base, log_base: base.ln(), coeffs, series })
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn log_base(&self) -> f64 {
        self.log_base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The local series `S` with plain Taylor coefficients.
    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn local(&self, z: f64) -> f64 {
        self.series.eval(z)
    }

    fn exp_b(&self, x: f64) -> f64 {
        self.base.powf(x)
    }

    fn log_b(&self, x: f64) -> f64 {
        x.ln() / self.log_base
    }

    pub fn slog(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::Domain(format!("slog argument must be finite, got {z}")));
        }
        if z <= 0.0 {
            return Ok(self.local(self.exp_b(z)) - 1.0);
        }
        let mut z = z;
        let mut shifts = 0usize;
        while z > 1.0 {
            if shifts == MAX_SHIFTS {
                return Err(Error::ShiftOverflow { z, limit: MAX_SHIFTS });
            }
            z = self.log_b(z);
            shifts += 1;
        }
        Ok(self.local(z) + shifts as f64)
    }

    /// Solves `S(z) = r` for `z` in `(0, 1]`, with `r` in `(-1, 0]`.
    pub fn tet_crit(&self, r: f64) -> Result<f64> {
        if !(r > -1.0 && r <= 0.0) {
            return Err(Error::Domain(format!("tet_crit needs r in (-1, 0], got {r}")));
        }
        if r == 0.0 {
            return Ok(1.0);
        }
        find_root(|z| self.local(z) - r, 1.0, Some((TET_CRIT_LOWER, 1.0)))
    }

    pub fn tetrate(&self, y: f64) -> Result<f64> {
        if !y.is_finite() || y <= -2.0 {
            return Err(Error::Domain(format!("tetrate needs finite y > -2, got {y}")));
        }
        let m = y.ceil();
        let mut z = self.tet_crit(y - m)?;
        if m >= 0.0 {
            for _ in 0..m as u64 {
                z = self.exp_b(z);
                if !z.is_finite() {
                    return Err(Error::Overflow(format!("tetration to height {y} exceeds f64 range")));
                }
            }
        } else {
            for _ in 0..(-m) as u64 {
                z = self.log_b(z);
            }
        }
        Ok(z)
    }

    /// `E_b^n(x) = tet(slog(x) + n)`.
    pub fn iterate(&self, n: IterateOrder, x: f64) -> Result<f64> {
        self.tetrate(self.slog(x)? + n.value())
    }

    /// Abel residuals on 50 evenly spaced `z` in `[0.05, 0.95]`.
    pub fn abel_report(&self) -> AbelReport {
        let mut local: f64 = 0.0;
        let mut global: f64 = 0.0;
        for i in 0..GATE_SAMPLES {
            let z = 0.05 + 0.9 * i as f64 / (GATE_SAMPLES - 1) as f64;
            let t = z - 1.0;
            local = local.max((self.local(self.exp_b(t)) - self.local(t) - 1.0).abs());
            let g = match (self.slog(self.exp_b(z)), self.slog(z)) {
                (Ok(a), Ok(b)) => (a - b - 1.0).abs(),
                _ => f64::INFINITY,
            };
            global = global.max(g);
        }
        // NaN must fail the gate.
        let fix = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
        AbelReport {
            local: fix(local),
            global: fix(global),
            tolerance: gate_tolerance(self.order()),
            samples: GATE_SAMPLES,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn env_e() -> SlogEnv {
        prepare(E, DEFAULT_ORDER).unwrap()
    }

    #[test]
    fn order_one_and_two() {
        assert_eq!(prepare(E, 1).unwrap().coeffs(), &[1.0]);
        let two = prepare(E, 2).unwrap();
        assert!((two.coeffs()[0] - 1.0).abs() < 1e-15);
        assert!(two.coeffs()[1].abs() < 1e-15);
    }

    #[test]
    fn order_two_matches_hand_elimination() {
        // j = 0: c1 + c2/2 = 1
        // j = 1: (1 - 1/L) c1 + c2 = 0
        let base: f64 = 3.0;
        let l = base.ln();
        let a = 1.0 - 1.0 / l;
        let c1 = 1.0 / (1.0 - a / 2.0);
        let c2 = -a * c1;
        let env = prepare(base, 2).unwrap();
        assert!((env.coeffs()[0] - c1).abs() < 1e-14);
        assert!((env.coeffs()[1] - c2).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_base_and_order() {
        assert!(matches!(prepare(1.2, 10), Err(Error::Domain(_))));
        assert!(prepare(MIN_BASE, 10).is_err());
        assert!(prepare(E, 0).is_err());
        assert!(prepare(E, MAX_ORDER + 1).is_err());
    }

    #[test]
    fn series_anchor_values() {
        let env = env_e();
        assert_eq!(env.local(0.0), -1.0);
        assert!(env.local(1.0).abs() < 1e-14);
    }

    #[test]
    fn slog_examples() {
        let env = env_e();
        assert!(env.slog(1.0).unwrap().abs() < 1e-14);
        assert!((env.slog(E).unwrap() - 1.0).abs() < 1e-14);
        assert!((env.slog(0.0).unwrap() + 1.0).abs() < 1e-14);
        assert!(env.slog(f64::NAN).is_err());
    }

    #[test]
    fn slog_is_strictly_increasing() {
        let env = env_e();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let z = 0.01 + (20.0 - 0.01) * i as f64 / 199.0;
            let s = env.slog(z).unwrap();
            assert!(s > prev, "slog not increasing at {z}");
            prev = s;
        }
    }

    #[test]
    fn tet_crit_examples() {
        let env = env_e();
        assert_eq!(env.tet_crit(0.0).unwrap(), 1.0);
        assert!(env.tet_crit(-1.0).is_err());
        assert!(env.tet_crit(0.1).is_err());
        let z = env.tet_crit(-0.5).unwrap();
        assert!(z > 0.0 && z <= 1.0);
        assert!((env.local(z) + 0.5).abs() <= 1e-12);
    }

    #[test]
    fn tetrate_examples() {
        let env = env_e();
        assert!((env.tetrate(1.0).unwrap() - E).abs() < 1e-15);
        assert!((env.tetrate(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((env.tetrate(-1.0).unwrap()).abs() < 1e-15);
        let y = env.slog(5.0).unwrap();
        assert!((env.tetrate(y).unwrap() - 5.0).abs() < 1e-8);
        assert!(env.tetrate(-2.0).is_err());
        assert!(matches!(env.tetrate(5.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn integer_tetration_base_two() {
        let env = prepare(2.0, DEFAULT_ORDER).unwrap();
        assert_eq!(env.tetrate(1.0).unwrap(), 2.0);
        assert_eq!(env.tetrate(2.0).unwrap(), 4.0);
        assert_eq!(env.tetrate(3.0).unwrap(), 16.0);
        assert_eq!(env.tetrate(4.0).unwrap(), 65536.0);
    }

    #[test]
    fn iterate_examples() {
        let env = env_e();
        let zero = IterateOrder::new(0.0).unwrap();
        let one = IterateOrder::new(1.0).unwrap();
        for x in [-3.0, 0.2, 1.0, 7.5] {
            assert!((env.iterate(zero, x).unwrap() - x).abs() < 1e-9 * (1.0 + x.abs()));
        }
        assert!((env.iterate(one, 0.0).unwrap() - 1.0).abs() < 1e-13);
        assert!(IterateOrder::new(f64::INFINITY).is_err());
    }

    #[test]
    fn half_iterate_of_exp_at_one() {
        // Reference from an 80-digit solve of the same order-30 system.
        let env = env_e();
        let half = IterateOrder::new(0.5).unwrap();
        let v = env.iterate(half, 1.0).unwrap();
        assert!((v - 1.646_357_776_95).abs() < 1e-9, "{v}");
    }

    #[test]
    fn gate_passes_fresh_and_fails_tampered() {
        let env = env_e();
        let report = env.abel_report();
        assert!(report.passed(), "{report:?}");
        assert!(report.local < 5e-6);

        let mut coeffs = env.coeffs().to_vec();
        coeffs[2] *= 1.01;
        let tampered = SlogEnv::from_coeffs(E, coeffs).unwrap();
        assert!(!tampered.abel_report().passed());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let env = env_e();
        let json = serde_json::to_string(&env).unwrap();
        let back: SlogEnv = serde_json::from_str(&json).unwrap();
        assert_eq!(back, env);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["order"], 30);
        assert_eq!(value["coeffs"].as_array().unwrap().len(), 30);
        assert!(serde_json::from_str::<SlogEnv>(r#"{"base":2.0,"order":2,"coeffs":[1.0]}"#).is_err());
    }
}
