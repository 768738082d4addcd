use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0})")]
    NotPsd(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("minimizer did not converge: last iterate ({re}, {im}), objective {value}")]
    MinimizerFailed { re: f64, im: f64, value: f64 },

    #[error("invalid norm parameter: {0}")]
    InvalidNorm(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("exponents violate 1/p <= 1/q + 1/r: p={p}, q={q}, r={r}")]
    ExponentConstraint { p: f64, q: f64, r: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
