use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor does not divide exactly")]
    NotDivisible,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("monomial input: weights are not determined")]
    Monomial,
    #[error("homogeneous input (equal weights)")]
    Homogeneous,
    #[error("support does not lie on a line with positive weights")]
    NotMixedHomogeneous,
    #[error("input excluded: {0}")]
    Excluded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input does not have the required shape: {0}")]
    Shape(String),
    #[error("root of multiplicity {0} is irrational; use the advisory float path")]
    IrrationalRoot(u32),
    #[error("ill-conditioned root clusters: {0}")]
    IllConditioned(String),
    #[error("constraint set has empty feasible region")]
    EmptyRegion,
    #[error("scaling fit unresolved (residual {residual:.3e}); {hint}")]
    UnresolvedScaling { residual: f64, hint: String },
    #[error("|xi| = {xi} exceeds the quadrature budget cap {cap}")]
    OscillationBudgetExceeded { xi: f64, cap: f64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
