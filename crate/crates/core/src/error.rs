use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("invalid A-function: {0}")]
    InvalidAFunction(String),
    #[error("{0}")]
    Domain(String),
    #[error("indeterminate roots: zero polynomial")]
    ZeroPolynomial,
    #[error("not isolating: {0}")]
    NotIsolating(String),
    #[error("incompatible radicands {0} and {1}")]
    MixedRadicands(String, String),
    #[error("inconclusive at depth cap {0}")]
    Inconclusive(usize),
    #[error("point not on locus: residual {0}")]
    OffLocus(String),
    #[error("empty locus: nothing to plot")]
    EmptyLocus,
}

pub type Result<T> = std::result::Result<T, Error>;
