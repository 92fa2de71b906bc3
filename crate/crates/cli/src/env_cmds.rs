use std::f64::consts::E;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use halfexp_core::closed_forms::{assumed_form, PiecewiseSolution};
use halfexp_core::numeric::lambert_w;
use halfexp_core::superlog::{prepare_with_report, IterateOrder, SlogEnv, DEFAULT_ORDER};

use crate::error::{CliError, CliResult};
use crate::format::{read_text, sig15, write_all};

#[derive(Args)]
pub struct PrepareArgs {
    /// Base b > e^(1/e); `e` is accepted.
    #[arg(long, value_parser = parse_base)]
    pub base: f64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EvalFn {
    Slog,
    Tet,
    Iterate,
    LambertW,
    AssumedForm,
    Piecewise,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Environment written by `prepare`; needed by slog, tet, iterate and piecewise.
    #[arg(long)]
    pub env: Option<PathBuf>,
    #[arg(long = "fn", value_enum)]
    pub func: EvalFn,
    /// Iteration order for `iterate`.
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<f64>,
    /// Argument; the height for `tet`.
    #[arg(long, alias = "y", allow_negative_numbers = true)]
    pub x: f64,
}

fn parse_base(s: &str) -> Result<f64, String> {
    match s {
        "e" => Ok(E),
        _ => s.parse().map_err(|e| format!("{e}")),
    }
}

pub fn prepare(args: &PrepareArgs) -> CliResult<()> {
    let (env, report) = prepare_with_report(args.base, args.order)?;
    let json = serde_json::to_string_pretty(&env).expect("env serializes");
    write_all(&[(args.out.clone(), json)])?;
    let solve = if report.exact_solve { "exact rational" } else { "floating point" };
    println!("order {}, condition {:.3e}, {solve} solve", env.order(), report.condition);
    match report.abel {
        Some(a) => println!(
            "abel residual: local {:.3e}, global {:.3e}, tolerance {:.1e}: pass",
            a.local, a.global, a.tolerance
        ),
        None => println!("abel gate skipped below order {}", halfexp_core::superlog::GATE_MIN_ORDER),
    }
    println!("wrote {}", args.out.display());
    Ok(())
}

pub fn load_env(path: &Path) -> CliResult<SlogEnv> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::unreadable(path, e))
}

pub fn eval(args: &EvalArgs) -> CliResult<()> {
    let env = || -> CliResult<SlogEnv> {
        let path = args.env.as_deref().ok_or_else(|| CliError::Usage("this function needs --env".into()))?;
        load_env(path)
    };
    let value = match args.func {
        EvalFn::Slog => env()?.slog(args.x)?,
        EvalFn::Tet => env()?.tetrate(args.x)?,
        EvalFn::Iterate => {
            let n = args.n.ok_or_else(|| CliError::Usage("--fn iterate needs --n".into()))?;
            env()?.iterate(IterateOrder::new(n)?, args.x)?
        }
        EvalFn::LambertW => lambert_w(args.x)?,
        EvalFn::AssumedForm => assumed_form(args.x)?,
        EvalFn::Piecewise => PiecewiseSolution::from_env(&env()?)?.eval(args.x)?,
    };
    println!("{}", sig15(value));
    Ok(())
}
