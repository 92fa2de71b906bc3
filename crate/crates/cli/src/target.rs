use halfexp_core::approx::TargetFn;

use crate::error::{CliError, CliResult};
use crate::expr;

const EXPR_PREFIX: &str = "expr:";

/// Builds a target from its CLI name; `expr` reads the formula from `src`.
pub fn resolve(name: &str, src: Option<&str>, interval: Option<(f64, f64)>) -> CliResult<TargetFn> {
    let base = match name {
        "sin" => TargetFn::sin(),
        "exp" => TargetFn::exp(),
        "shift" => TargetFn::shift(),
        "quad" => TargetFn::quad(),
        "expr" => {
            let src = src.ok_or_else(|| CliError::Usage("--target expr needs --expr".into()))?;
            let e = expr::parse(src).map_err(|e| CliError::Usage(format!("--expr {src:?}: {e}")))?;
            let domain = interval.ok_or_else(|| CliError::Usage("--target expr needs --interval".into()))?;
            return Ok(TargetFn::new(format!("{EXPR_PREFIX}{src}"), domain, move |x| e.eval(x))?);
        }
        other => return Err(CliError::Usage(format!("unknown target {other:?}"))),
    };
    match interval {
        Some(d) => Ok(base.with_domain(d)?),
        None => Ok(base),
    }
}

/// Inverse of [`TargetFn::label`] for targets built by [`resolve`].
pub fn from_label(label: &str, interval: (f64, f64)) -> CliResult<TargetFn> {
    match label.strip_prefix(EXPR_PREFIX) {
        Some(src) => resolve("expr", Some(src), Some(interval)),
        None => resolve(label, None, Some(interval)),
    }
}
