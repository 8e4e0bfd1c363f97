use thiserror::Error;

/// Errors raised across the symbolic and operator layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    /// `at` is `"n = <index>"` or `"limit"`.
    #[error("domain error in `{func}` at {at}: argument {value} outside the domain")]
    Domain {
        func: String,
        at: String,
        value: f64,
    },

    #[error("symbol undefined: band {band} has no declared limit")]
    SymbolUndefined { band: i64 },

    #[error("not trace class: diagonal limit is {limit}, expected 0")]
    NotTraceClass { limit: f64 },

    #[error("trace did not converge after {terms} terms")]
    Convergence { terms: u64 },

    #[error("window radius {radius} too small for symbol degree {degree}")]
    Window { radius: usize, degree: i64 },

    #[error("pair is not in L_{n}: the boundary symbols are not related by U^{n}")]
    NotInLineBundle { n: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "truncation {dim} too small: band diagonals still move by {deviation:e} at n = {dim}/2"
    )]
    TruncationTooSmall { dim: usize, deviation: f64 },

    #[error("indeterminate index: eigenvalue {eigenvalue:e} of the truncated difference is neither ±1 nor separated from it at truncation {dim}")]
    IndeterminateIndex { eigenvalue: f64, dim: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
