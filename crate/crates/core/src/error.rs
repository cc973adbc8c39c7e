use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum MumError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix of size {rows}x{cols} is not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is not a perfect square")]
    NotPerfectSquare(usize),

    #[error("matrix is not Hermitian: correction norm {0:e}")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "t = {t} outside admissible interval [{lo}, {hi}]: element ({block}, {outcome}) has eigenvalue {eigenvalue:e}"
    )]
    TOutOfRange {
        t: f64,
        lo: f64,
        hi: f64,
        block: usize,
        outcome: usize,
        eigenvalue: f64,
    },

    #[error("probability {0:e} is negative beyond tolerance")]
    NegativeProbability(f64),

    #[error("trace {0} differs from 1")]
    NotNormalized(f64),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, MumError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(MumError::InvalidArgument(msg.into()))
}
