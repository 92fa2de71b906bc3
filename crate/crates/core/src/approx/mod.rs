//! Numerical functional roots: find `g` with `g^k = f` on an interval.
//!
//! All solvers score candidates with the same midpoint Riemann sum of
//! `(g^k(x) - f(x))^2` ([`riemann_loss`]) and never return anything worse
//! than the best candidate they have seen.

mod additive;
mod candidate;
mod compose;
mod config;
mod genetic;
mod ica;
mod loss;
mod result;
mod target;

pub use additive::{additive_correct, AdditiveOutcome};
pub use candidate::{Candidate, FractionalMap, MapFn, Repr, ReprKind};
pub use compose::{compose_iterates, DEFAULT_COMPOSE_KNOTS};
pub use config::SolverConfig;
pub use genetic::{genetic_solve, GeneticOutcome};
pub use ica::{ica_solve, IcaOutcome};
pub use loss::{riemann_loss, LossGrid, LossReport};
pub use result::{IterOrder, SolveResult};
pub use target::TargetFn;
