//! Closed-form and semi-closed constructions.

mod assumed;
mod fixed_point;
mod piecewise;

pub use assumed::{assumed_form, assumed_form_general};
pub use fixed_point::{fixed_point_half_series, FixedPointSeries};
pub use piecewise::{piecewise_solution, PiecewiseSolution, DEFAULT_SEED_KNOTS};
