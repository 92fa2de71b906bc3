use std::path::PathBuf;

use clap::{Args, ValueEnum};
use halfexp_core::approx::SolveResult;
use halfexp_core::superlog::{IterateOrder, SlogEnv};

use crate::error::{CliError, CliResult};
use crate::format::{read_text, sig17, write_csv};
use crate::solve::history_path;
use crate::target;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Residual,
    Overlay,
    LossHistory,
}

#[derive(Args)]
pub struct PlotArgs {
    /// A result file from `solve` or an environment from `prepare`.
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long, value_enum)]
    pub what: PlotKind,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long)]
    pub out: PathBuf,
}

enum Source {
    Env(SlogEnv),
    Result(Box<SolveResult>),
}

/// `(f, g^k)` at one point.
type Pair = Box<dyn Fn(f64) -> CliResult<(f64, f64)>>;

pub fn plotdata(args: &PlotArgs) -> CliResult<()> {
    let text = read_text(&args.source)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::unreadable(&args.source, e))?;
    let source = if value.get("base").is_some() {
        Source::Env(serde_json::from_value(value).map_err(|e| CliError::unreadable(&args.source, e))?)
    } else {
        Source::Result(serde_json::from_value(value).map_err(|e| CliError::unreadable(&args.source, e))?)
    };

    if args.what == PlotKind::LossHistory {
        let Source::Result(_) = source else {
            return Err(CliError::Usage("loss-history needs a solver result".into()));
        };
        return copy_history(args);
    }
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let (default_interval, pair): ((f64, f64), Pair) = match source {
        Source::Env(env) => {
            let half = IterateOrder::new(0.5)?;
            let pair: Pair = Box::new(move |x| {
                let gg = env.iterate(half, env.iterate(half, x)?)?;
                Ok((env.base().powf(x), gg))
            });
            ((0.0, 2.0), pair)
        }
        Source::Result(r) => {
            let g = r.candidate()?;
            let k = g
                .integer_order()
                .ok_or_else(|| CliError::Usage(format!("order {} is not an integer", r.k)))?;
            let f = target::from_label(&r.target.label, r.target.interval)?;
            let pair: Pair = Box::new(move |x| Ok((f.eval(x), g.iterate(k, x))));
            (r.target.interval, pair)
        }
    };
    let (a, b) = match args.interval.as_deref() {
        Some(&[a, b]) if a < b => (a, b),
        Some(_) => return Err(CliError::Usage("--interval needs A < B".into())),
        None => default_interval,
    };
    let mut rows = Vec::with_capacity(args.points);
    for i in 0..args.points {
        let x = if i + 1 == args.points { b } else { a + (b - a) * i as f64 / (args.points - 1) as f64 };
        let (f, gg) = pair(x)?;
        let mut row = vec![sig17(x), sig17(f), sig17(gg)];
        if args.what == PlotKind::Residual {
            let abs = (gg - f).abs();
            row.push(sig17(abs));
            row.push(sig17(abs / f.abs()));
        }
        rows.push(row);
    }
    let header: &[&str] = match args.what {
        PlotKind::Overlay => &["x", "f", "gg"],
        _ => &["x", "f", "gg", "abs_residual", "rel_residual"],
    };
    write_csv(&args.out, header, rows)
}

fn copy_history(args: &PlotArgs) -> CliResult<()> {
    let path = history_path(&args.source);
    let mut reader = csv::Reader::from_path(&path).map_err(|e| CliError::unreadable(&path, e))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::unreadable(&path, e))?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    write_csv(&args.out, &["generation", "best_loss"], rows)
}
