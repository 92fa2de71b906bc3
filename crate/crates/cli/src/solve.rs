use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use halfexp_core::approx::{
    additive_correct, genetic_solve, ica_solve, Candidate, IterOrder, ReprKind, SolveResult, SolverConfig, TargetFn,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::{read_text, sig15, sig17, write_all};
use crate::target;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ica,
    Additive,
    Genetic,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// sin, exp, shift, quad or expr.
    #[arg(long, default_value = "sin")]
    pub target: String,
    /// Formula in `x` for `--target expr`, e.g. "1+x^2".
    #[arg(long)]
    pub expr: Option<String>,
    /// fourier, taylor or spline; genetic only.
    #[arg(long, value_parser = parse_repr)]
    pub repr: Option<ReprKind>,
    #[arg(long)]
    pub terms: Option<usize>,
    /// Root order, an integer or p/q.
    #[arg(long, default_value = "2")]
    pub k: String,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Solver settings as JSON; flags given here take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Starting spline for additive correction: identity, ica, or a result file.
    #[arg(long, default_value = "identity")]
    pub init: String,
    /// Result JSON; the history CSV and manifest are written beside it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Write to a different result path than the recorded one.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    pub outputs: Vec<String>,
    pub tool_version: String,
}

/// `run.json` -> `run.history.csv`.
pub fn history_path(out: &Path) -> PathBuf {
    sibling(out, "history.csv")
}

pub fn manifest_path(out: &Path) -> PathBuf {
    sibling(out, "manifest.json")
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn parse_repr(s: &str) -> Result<ReprKind, String> {
    s.parse().map_err(|e: halfexp_core::Error| e.to_string())
}

fn config_for(args: &SolveArgs) -> CliResult<SolverConfig> {
    let mut cfg = match &args.config {
        Some(p) => serde_json::from_str(&read_text(p)?).map_err(|e| CliError::unreadable(p, e))?,
        None => SolverConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(g) = args.generations {
        cfg.generations = g;
    }
    if let Some(p) = args.population {
        cfg.population = p;
    }
    if let Some(g) = args.grid_points {
        cfg.grid_points = g;
    }
    if let Some(t) = args.tau {
        cfg.tau = t;
    }
    if let Some(n) = args.iterations {
        match args.method {
            Method::Ica => cfg.ica_rounds = n,
            Method::Additive => cfg.additive_iterations = n,
            Method::Genetic => cfg.generations = n,
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn interval(args: &SolveArgs) -> CliResult<Option<(f64, f64)>> {
    match args.interval.as_deref() {
        None => Ok(None),
        Some(&[a, b]) => Ok(Some((a, b))),
        Some(_) => Err(CliError::Usage("--interval takes two numbers".into())),
    }
}

fn additive_start(args: &SolveArgs, f: &TargetFn, cfg: &SolverConfig) -> CliResult<Candidate> {
    match args.init.as_str() {
        "identity" => Ok(Candidate::spline(
            halfexp_core::numeric::LinearSpline::new(&[
                (f.domain().0, f.domain().0),
                (f.domain().1, f.domain().1),
            ])?,
            2,
        )?),
        "ica" => Ok(ica_solve(f, cfg)?.candidate),
        path => {
            let p = Path::new(path);
            let r: SolveResult = serde_json::from_str(&read_text(p)?).map_err(|e| CliError::unreadable(p, e))?;
            Ok(r.candidate()?)
        }
    }
}

/// Runs the solver and returns the result JSON and history rows.
fn run_solver(args: &SolveArgs) -> CliResult<(SolveResult, Vec<f64>)> {
    let cfg = config_for(args)?;
    let f = target::resolve(&args.target, args.expr.as_deref(), interval(args)?)?;
    let k: IterOrder = args.k.parse()?;
    let two = IterOrder(num_rational::Ratio::from_integer(2));
    if args.method != Method::Genetic && k != two {
        return Err(CliError::Usage(format!("--method {:?} solves for half-iterates only (k = 2)", args.method)));
    }
    let name = format!("{:?}", args.method).to_lowercase();
    match args.method {
        Method::Ica => {
            let out = ica_solve(&f, &cfg)?;
            for (round, loss) in out.history.iter().enumerate() {
                eprintln!("round {}: best loss {}", round + 1, sig15(*loss));
            }
            let mut r = SolveResult::new(&name, &f, &out.candidate, out.report.loss, &cfg);
            r.x_start = Some(out.x_start);
            r.w = Some(out.w);
            Ok((r, out.history))
        }
        Method::Additive => {
            let g0 = additive_start(args, &f, &cfg)?;
            let out = additive_correct(&f, &g0, &cfg)?;
            Ok((SolveResult::new(&name, &f, &out.candidate, out.report.loss, &cfg), out.history))
        }
        Method::Genetic => {
            let repr = args.repr.ok_or_else(|| CliError::Usage("--method genetic needs --repr".into()))?;
            let terms = args.terms.ok_or_else(|| CliError::Usage("--method genetic needs --terms".into()))?;
            if !k.0.is_integer() {
                return Err(CliError::Usage(format!(
                    "genetic search needs an integer order, got {k}; fractional orders come from composing roots"
                )));
            }
            let k = u32::try_from(*k.0.numer()).map_err(|_| CliError::Usage(format!("order {k} is too large")))?;
            let out = genetic_solve(&f, repr, terms, k, &cfg)?;
            for (gen, loss) in out.history.iter().enumerate().filter(|(g, _)| (g + 1) % 500 == 0) {
                eprintln!("generation {}: best loss {}", gen + 1, sig15(*loss));
            }
            Ok((SolveResult::new(&name, &f, &out.candidate, out.report.loss, &cfg), out.history))
        }
    }
}

pub fn solve(args: &SolveArgs) -> CliResult<()> {
    let (result, history) = run_solver(args)?;
    let hist_path = history_path(&args.out);
    let man_path = manifest_path(&args.out);

    let mut csv = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| CliError::unreadable(&hist_path, e);
    csv.write_record(["generation", "best_loss"]).map_err(to_err)?;
    for (i, loss) in history.iter().enumerate() {
        csv.write_record([(i + 1).to_string(), sig17(*loss)]).map_err(to_err)?;
    }
    let csv = String::from_utf8(csv.into_inner().expect("in-memory writer")).expect("ascii csv");

    let parameters = match serde_json::to_value(args).expect("arguments serialize") {
        serde_json::Value::Object(m) => m.into_iter().collect(),
        _ => unreachable!("struct serializes to an object"),
    };
    let manifest = RunManifest {
        command: "solve".into(),
        parameters,
        seed: result.seed,
        outputs: [&args.out, &hist_path, &man_path].iter().map(|p| p.display().to_string()).collect(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
    };
    write_all(&[
        (args.out.clone(), result.to_json()),
        (hist_path, csv),
        (man_path, serde_json::to_string_pretty(&manifest).expect("manifest serializes")),
    ])?;
    println!("loss {}", sig15(result.loss));
    Ok(())
}

pub fn replay(args: &ReplayArgs) -> CliResult<()> {
    let text = read_text(&args.manifest)?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| CliError::unreadable(&args.manifest, e))?;
    if manifest.command != "solve" {
        return Err(CliError::unreadable(&args.manifest, format!("cannot replay {:?}", manifest.command)));
    }
    let params = serde_json::Value::Object(manifest.parameters.into_iter().collect());
    let mut solve_args: SolveArgs =
        serde_json::from_value(params).map_err(|e| CliError::unreadable(&args.manifest, e))?;
    if let Some(out) = &args.out {
        solve_args.out = out.clone();
    }
    solve(&solve_args)
}
