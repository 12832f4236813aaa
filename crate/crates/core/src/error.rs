use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    Validation(String),

    #[error("probabilities sum to {sum}, not 1 (tolerance {tolerance:e}); pass --normalize to rescale")]
    Sum { sum: f64, tolerance: f64 },

    #[error("support violation at index {index}: {detail}")]
    Support { index: usize, detail: String },

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("majorization does not hold: first violated prefix has length {prefix_len} (gap {gap:e})")]
    Majorization { prefix_len: usize, gap: f64 },

    #[error("instance too large: n = {n} exceeds limit {limit}")]
    Size { n: usize, limit: usize },

    #[error("invalid 3-partition instance: {0}")]
    Instance(String),

    #[error("not an aggregation of the source distribution: {0}")]
    Aggregation(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("ratio p1/pn = {ratio} exceeds rho = {rho}")]
    Ratio { ratio: f64, rho: f64 },

    #[error("bound undefined: {0}")]
    BoundDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
