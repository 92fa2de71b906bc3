use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular matrix: pivot {pivot:e} in column {column} is below tolerance")]
    Singular { column: usize, pivot: f64 },

    #[error("series center mismatch: inner constant term {inner_c0} != outer center {outer_center}")]
    CenterMismatch { inner_c0: f64, outer_center: f64 },

    #[error("invalid knots: {0}")]
    InvalidKnots(String),

    #[error("root finder did not converge (best x = {best_x}, |f| = {residual:e})")]
    NoConvergence { best_x: f64, residual: f64 },

    #[error("Abel residual gate failed: residual {residual:e} exceeds tolerance {tolerance:e} at order {order}")]
    AbelGate { order: usize, residual: f64, tolerance: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("shift count exceeded {limit} while reducing {z}")]
    ShiftOverflow { z: f64, limit: usize },

    #[error("degenerate chain: only {knots} usable knot(s)")]
    DegenerateChain { knots: usize },

    #[error("additive correction diverged: loss {loss:e} exceeds {limit:e}")]
    Divergence { loss: f64, limit: f64 },

    #[error("unsupported fixed point: expected c0 = 0 and c1 = 1, got c0 = {c0}, c1 = {c1}")]
    UnsupportedFixedPoint { c0: f64, c1: f64 },

    #[error("branch domain: {0}")]
    BranchDomain(String),

    #[error("empty common domain")]
    EmptyDomain,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Convergence,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NoConvergence { .. }
            | Error::AbelGate { .. }
            | Error::Singular { .. }
            | Error::Divergence { .. }
            | Error::DegenerateChain { .. } => ErrorKind::Convergence,
            _ => ErrorKind::Domain,
        }
    }
}
