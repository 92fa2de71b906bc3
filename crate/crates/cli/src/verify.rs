use std::path::PathBuf;

use clap::Args;
use halfexp_core::closed_forms::{assumed_form, fixed_point_half_series};
use halfexp_core::numeric::{lambert_w, PowerSeries, BRANCH_POINT};
use halfexp_core::superlog::{IterateOrder, SlogEnv};

use crate::env_cmds::load_env;
use crate::error::{CliError, CliResult};

#[derive(Args)]
pub struct VerifyArgs {
    /// Environment to check; without it only the environment-free suites run.
    #[arg(long)]
    pub env: Option<PathBuf>,
}

struct Outcome {
    name: &'static str,
    status: Option<bool>,
    detail: String,
}

fn suite(name: &'static str, worst: halfexp_core::Result<f64>, tol: f64) -> Outcome {
    match worst {
        Ok(w) => Outcome { name, status: Some(w <= tol), detail: format!("worst {w:.3e}, tolerance {tol:.1e}") },
        Err(e) => Outcome { name, status: Some(false), detail: e.to_string() },
    }
}

fn skipped(name: &'static str) -> Outcome {
    Outcome { name, status: None, detail: "no --env given".into() }
}

fn max_over(it: impl IntoIterator<Item = halfexp_core::Result<f64>>) -> halfexp_core::Result<f64> {
    let mut worst: f64 = 0.0;
    for v in it {
        let v = v?;
        worst = if v.is_nan() { f64::INFINITY } else { worst.max(v) };
    }
    Ok(worst)
}

fn env_suites(env: &SlogEnv) -> Vec<Outcome> {
    let abel = env.abel_report();
    let round_trip = max_over((0..40).map(|i| {
        let y = -0.9 + 3.9 * i as f64 / 39.0;
        Ok((env.slog(env.tetrate(y)?)? - y).abs())
    }));
    let semigroup = IterateOrder::new(0.5).and_then(|half| {
        max_over((0..50).map(|i| {
            let x = 2.0 * i as f64 / 49.0;
            let target = env.base().powf(x);
            Ok((env.iterate(half, env.iterate(half, x)?)? - target).abs() / target)
        }))
    });
    vec![
        Outcome {
            name: "abel",
            status: Some(abel.passed()),
            detail: format!("local {:.3e}, global {:.3e}, tolerance {:.1e}", abel.local, abel.global, abel.tolerance),
        },
        suite("round-trip", round_trip, 1e-7),
        suite("semigroup", semigroup, 1e-4),
    ]
}

fn free_suites() -> Vec<Outcome> {
    let lambert = max_over((0..200).map(|i| {
        // log-spaced distance from the branch point
        let t = 1e-6 * ((1e3 - BRANCH_POINT) / 1e-6f64).powf(i as f64 / 199.0);
        let x = BRANCH_POINT + t;
        let w = lambert_w(x)?;
        Ok((w * w.exp() - x).abs() / (1.0 + x.abs()))
    }));
    let assumed = max_over((0..200).map(|i| {
        let x = 0.01 * 1000f64.powf((i + 1) as f64 / 200.0);
        let y = assumed_form(x)?;
        Ok((y.powf(y.powf(x)) - x.exp()).abs() / x.exp())
    }));
    let composition = fixed_point_half_series(&PowerSeries::sin(7), 7).map(|g| g.composition_residual());
    let evaluation = fixed_point_half_series(&PowerSeries::sin(9), 9).map(|g| {
        (0..=100)
            .map(|i| {
                let x = -0.5 + i as f64 / 100.0;
                (g.eval(g.eval(x)) - x.sin()).abs()
            })
            .fold(0.0, f64::max)
    });
    vec![
        suite("lambert-w", lambert, 1e-12),
        suite("assumed-form", assumed, 1e-10),
        suite("fixed-point-series", composition, 1e-12),
        suite("fixed-point-eval", evaluation, 1e-6),
    ]
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let mut outcomes = match &args.env {
        Some(path) => env_suites(&load_env(path)?),
        None => vec![skipped("abel"), skipped("round-trip"), skipped("semigroup")],
    };
    outcomes.extend(free_suites());
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for o in &outcomes {
        let status = match o.status {
            Some(true) => "PASS",
            Some(false) => {
                failed += 1;
                "FAIL"
            }
            None => "SKIP",
        };
        println!("{:width$}  {status}  {}", o.name, o.detail);
    }
    if failed > 0 {
        return Err(CliError::SuitesFailed(failed));
    }
    Ok(())
}
