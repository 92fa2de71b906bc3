use super::{Candidate, LossGrid, LossReport, Repr, SolverConfig, TargetFn};
use crate::numeric::LinearSpline;
use crate::{Error, Result};

const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone)]
pub struct AdditiveOutcome {
    pub candidate: Candidate,
    pub report: LossReport,
    /// Loss after each update, including ones that were not kept.
    pub history: Vec<f64>,
}

/// Relaxes a spline half-iterate with `g += tau * (f - g∘g)` on a uniform
/// knot grid, returning the best iterate seen.
pub fn additive_correct(f: &TargetFn, g0: &Candidate, cfg: &SolverConfig) -> Result<AdditiveOutcome> {
    cfg.validate()?;
    if !matches!(g0.repr, Repr::Spline(_)) {
        return Err(Error::InvalidConfig("additive correction needs a spline candidate".into()));
    }
    let grid = LossGrid::new(f, 2, cfg.grid_points)?;
    let initial = grid.score(|x| g0.eval(x));
    if !initial.is_finite() {
        return Err(Error::Divergence { loss: initial, limit: f64::INFINITY });
    }
    let limit = DIVERGENCE_FACTOR * initial;

    let (a, b) = f.domain();
    let shape = LinearSpline::sample(|x| g0.eval(x), a, b, cfg.spline_knots)?;
    let f_vals: Vec<f64> = shape.xs().iter().map(|&x| f.eval(x)).collect();
    let mut g = shape;
    let mut best = (initial, g0.repr.clone());
    let mut history = Vec::with_capacity(cfg.additive_iterations);
    for _ in 0..cfg.additive_iterations {
        let ys: Vec<f64> = g
            .knots()
            .zip(&f_vals)
            .map(|((_, y), &fx)| y + cfg.tau * (fx - g.eval(y)))
            .collect();
        g = match g.with_values(ys) {
            Ok(next) => next,
            Err(_) => return Err(Error::Divergence { loss: f64::INFINITY, limit }),
        };
        let loss = grid.score(|x| g.eval(x));
        history.push(loss);
        if !loss.is_finite() || (loss > limit && loss > 1e-12) {
            return Err(Error::Divergence { loss, limit });
        }
        if loss < best.0 {
            best = (loss, Repr::Spline(g.clone()));
        }
    }
    let mut candidate = Candidate::new(best.1, g0.k)?;
    let report = grid.report(|x| candidate.eval(x));
    candidate.loss = Some(report.loss);
    Ok(AdditiveOutcome { candidate, report, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::ica_solve;

    #[test]
    fn exact_half_iterate_is_a_fixed_point() {
        let f = TargetFn::shift();
        let g0 = Candidate::spline(LinearSpline::new(&[(0.0, 0.5), (3.0, 3.5)]).unwrap(), 2).unwrap();
        let cfg = SolverConfig { additive_iterations: 20, ..Default::default() };
        let before = crate::approx::riemann_loss(&g0, &f, 2, cfg.grid_points).unwrap().loss;
        let out = additive_correct(&f, &g0, &cfg).unwrap();
        assert!(before < 1e-28);
        assert!(out.report.loss <= before);
        for x in [0.0, 1.3, 3.0] {
            assert!((out.candidate.eval(x) - (x + 0.5)).abs() < 1e-15);
        }
    }

    #[test]
    fn shift_from_identity() {
        let f = TargetFn::shift();
        let g0 = Candidate::identity((0.0, 3.0)).unwrap();
        let out = additive_correct(&f, &g0, &SolverConfig::default()).unwrap();
        assert!(out.report.loss < 1e-3, "{}", out.report.loss);
        assert!(out.report.loss < 3.0);
        assert!((out.candidate.eval(1.5) - 2.0).abs() < 0.05);
    }

    #[test]
    fn never_worse_than_ica_seed() {
        let f = TargetFn::sin().with_domain((0.1, 1.5)).unwrap();
        let ica = ica_solve(&f, &SolverConfig::default()).unwrap();
        let out = additive_correct(&f, &ica.candidate, &SolverConfig::default()).unwrap();
        assert!(out.report.loss <= ica.report.loss);
    }

    #[test]
    fn large_step_diverges() {
        let f = TargetFn::new("cube", (0.0, 2.0), |x| x * x * x + 3.0).unwrap();
        let g0 = Candidate::identity((0.0, 2.0)).unwrap();
        let cfg = SolverConfig { tau: 50.0, ..Default::default() };
        assert!(matches!(additive_correct(&f, &g0, &cfg), Err(Error::Divergence { .. })));
    }

    #[test]
    fn rejects_series_candidates() {
        let g0 = Candidate::fourier(vec![1.0], 2).unwrap();
        assert!(additive_correct(&TargetFn::sin(), &g0, &SolverConfig::default()).is_err());
    }
}
