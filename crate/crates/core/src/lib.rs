//! Fractional iteration of real functions.
//!
//! The crate is organised in four layers:
//!
//! * [`numeric`]: truncated power series, linear splines, dense linear
//!   solves, a Newton/bisection root finder and the principal branch of the
//!   Lambert W function.
//! * [`superlog`]: the super-logarithm of a base `b > e^(1/e)` built from a
//!   truncated series near the origin, its inverse (real-height tetration) and
//!   real-order iterates of `x -> b^x` through the Abel shift.
//! * [`closed_forms`]: Lambert-W assumed-form solutions, the piecewise
//!   half-exponential and the fixed-point Maclaurin half-iterate.
//! * [`approx`]: numerical functional roots `g^k = f` by chain
//!   interpolation, additive relaxation and a mutation-only genetic search.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod closed_forms;
mod error;
pub mod numeric;
pub mod superlog;

pub use error::{Error, ErrorKind, Result};
