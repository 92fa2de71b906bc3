use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{Candidate, LossGrid, LossReport, Repr, ReprKind, SolverConfig, TargetFn};
use crate::numeric::LinearSpline;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GeneticOutcome {
    pub candidate: Candidate,
    pub report: LossReport,
    /// Best loss of each scored generation.
    pub history: Vec<f64>,
}

/// Mutation-only evolution of `terms` coefficients with truncation
/// selection and elitism.
///
/// Spline candidates place `terms` knots evenly over the target interval and
/// evolve their ordinates. Each individual of each generation draws from its
/// own ChaCha stream, so results depend only on `cfg`.
pub fn genetic_solve(
    f: &TargetFn,
    kind: ReprKind,
    terms: usize,
    k: u32,
    cfg: &SolverConfig,
) -> Result<GeneticOutcome> {
    cfg.validate()?;
    if terms == 0 || (kind == ReprKind::Spline && terms < 2) {
        return Err(Error::InvalidConfig(format!("{terms} terms is too few for a {kind} candidate")));
    }
    let grid = LossGrid::new(f, k, cfg.grid_points)?;
    let template = match kind {
        ReprKind::Fourier => Repr::Fourier(vec![0.0; terms]),
        ReprKind::Taylor => Repr::Taylor(vec![0.0; terms]),
        ReprKind::Spline => {
            let (a, b) = f.domain();
            Repr::Spline(LinearSpline::sample(|_| 0.0, a, b, terms)?)
        }
    };
    let score = |params: &[f64]| -> Result<(f64, Repr)> {
        let repr = template.with_params(params.to_vec())?;
        Ok((grid.score(|x| repr.eval(x)), repr))
    };

    let mut init = stream(cfg.seed, 0);
    let mut population: Vec<(f64, Repr)> = (0..cfg.population)
        .map(|_| {
            let params: Vec<f64> = (0..terms).map(|_| init.random_range(-1.0..=1.0)).collect();
            score(&params)
        })
        .collect::<Result<_>>()?;

    let n_elite = cfg.elite_count();
    let mut temperature = cfg.temperature;
    let mut history = Vec::with_capacity(cfg.generations);
    for generation in 0..cfg.generations {
        population.sort_by(|p, q| p.0.total_cmp(&q.0));
        history.push(population[0].0);
        if generation + 1 == cfg.generations {
            break;
        }
        population.truncate(n_elite);
        let noise = Normal::new(0.0, temperature)
            .map_err(|e| Error::InvalidConfig(format!("mutation scale {temperature}: {e}")))?;
        for child in 0..cfg.population - n_elite {
            let mut rng = stream(cfg.seed, ((generation as u64 + 1) << 32) | child as u64);
            let params: Vec<f64> = population[child % n_elite]
                .1
                .params()
                .iter()
                .map(|&c| c + noise.sample(&mut rng))
                .collect();
            population.push(score(&params)?);
        }
        temperature *= cfg.temperature_decay;
    }

    let best = population.swap_remove(0).1;
    let mut candidate = Candidate::new(best, Ratio::from_integer(i64::from(k)))?;
    let report = grid.report(|x| candidate.eval(x));
    candidate.loss = Some(report.loss);
    Ok(GeneticOutcome { candidate, report, history })
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}
