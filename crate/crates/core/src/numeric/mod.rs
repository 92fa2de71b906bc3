//! Foundation numerics shared by the rest of the crate.

mod lambert;
mod linalg;
mod roots;
mod series;
mod spline;

pub use lambert::{lambert_w, BRANCH_POINT};
pub use linalg::{linear_solve, solve_rational, DenseMatrix, Solution, CONDITION_WARNING};
pub use roots::{find_root, ROOT_TOLERANCE};
pub use series::PowerSeries;
pub use spline::LinearSpline;
