use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid Lp parameter p = {0} (must be >= 1 or infinite)")]
    InvalidNormParameter(f64),

    #[error("angle undefined for a zero vector")]
    ZeroVector,

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not positive-definite (pivot {pivot} = {value:e} at row {row})")]
    NotPositiveDefinite {
        row: usize,
        pivot: usize,
        value: f64,
        /// Row-major entries of the rejected matrix.
        matrix: Vec<f64>,
    },

    #[error("coincident pivots: pivot-pivot distance is zero")]
    CoincidentPivots,

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate data set: {0}")]
    Degenerate(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
