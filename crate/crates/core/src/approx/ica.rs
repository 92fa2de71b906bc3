use super::{Candidate, LossGrid, LossReport, SolverConfig, TargetFn};
use crate::numeric::LinearSpline;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct IcaOutcome {
    pub candidate: Candidate,
    pub report: LossReport,
    pub x_start: f64,
    pub w: f64,
    /// Best loss after each refinement round.
    pub history: Vec<f64>,
}

/// Half-iterate from the chains `x_{j+1} = f(x_j)`, `y_{j+1} = f(y_j)`
/// seeded with `g(x_start) = w`.
///
/// Every chain link gives two constraints, `g(x_j) = y_j` and
/// `g(y_j) = x_{j+1}`. The seed pair is chosen by a grid search that is
/// refined around its best point each round.
pub fn ica_solve(f: &TargetFn, cfg: &SolverConfig) -> Result<IcaOutcome> {
    cfg.validate()?;
    let grid = LossGrid::new(f, 2, cfg.grid_points)?;
    let (a, b) = f.domain();

    let (mut f_lo, mut f_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..=cfg.grid_points {
        let v = f.eval(a + (b - a) * i as f64 / cfg.grid_points as f64);
        if v.is_finite() {
            f_lo = f_lo.min(v);
            f_hi = f_hi.max(v);
        }
    }
    let n = cfg.ica_grid;
    let (mut x_lo, mut w_lo) = (a, a.min(f_lo));
    let mut dx = (b - a) / (n - 1) as f64;
    let mut dw = (b.max(f_hi) - w_lo) / (n - 1) as f64;

    let mut best: Option<(f64, f64, f64, LinearSpline)> = None;
    let mut history = Vec::with_capacity(cfg.ica_rounds);
    for _ in 0..cfg.ica_rounds {
        for i in 0..n {
            let x0 = x_lo + dx * i as f64;
            for j in 0..n {
                let w = w_lo + dw * j as f64;
                let Some(spline) = chain_spline(f, x0, w, cfg.chain_len) else {
                    continue;
                };
                let loss = grid.score(|x| spline.eval(x));
                if best.as_ref().is_none_or(|b| loss < b.0) {
                    best = Some((loss, x0, w, spline));
                }
            }
        }
        let Some((loss, bx, bw, _)) = &best else {
            return Err(Error::DegenerateChain { knots: 1 });
        };
        history.push(*loss);
        x_lo = bx - 2.0 * dx;
        w_lo = bw - 2.0 * dw;
        dx /= 2.0;
        dw /= 2.0;
    }
    let (_, x_start, w, spline) = best.expect("at least one round");
    let mut candidate = Candidate::spline(spline, 2)?;
    let report = grid.report(|x| candidate.eval(x));
    candidate.loss = Some(report.loss);
    Ok(IcaOutcome { candidate, report, x_start, w, history })
}

/// Spline through the chain constraints, or `None` if fewer than two
/// distinct finite knots survive.
pub(crate) fn chain_spline(f: &TargetFn, x0: f64, w: f64, chain_len: usize) -> Option<LinearSpline> {
    let mut pts = Vec::with_capacity(2 * chain_len + 1);
    let (mut x, mut y) = (x0, w);
    pts.push((x, y));
    for _ in 0..chain_len {
        let nx = f.eval(x);
        pts.push((y, nx));
        let ny = f.eval(y);
        pts.push((nx, ny));
        x = nx;
        y = ny;
    }
    pts.retain(|p| p.0.is_finite() && p.1.is_finite());
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
    pts.dedup_by(|later, kept| (later.0 - kept.0).abs() <= 1e-12 * (1.0 + kept.0.abs()));
    if pts.len() < 2 {
        return None;
    }
    LinearSpline::new(&pts).ok()
}
