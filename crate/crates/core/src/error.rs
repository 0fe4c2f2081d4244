//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("elliptic solve diverged after {iterations} iterations, last residual {residual:.3e}")]
    SolverDiverged { iterations: usize, residual: f64 },

    #[error("non-finite field value at flow parameter {param:.6e}; last good value {last_good:.6e}")]
    Blowup { param: f64, last_good: f64 },

    #[error("gauge residual {residual:.3e} exceeds tolerance {tolerance:.3e} ({which})")]
    GaugeResidual {
        which: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("insufficient stencil: {0}")]
    InsufficientStencil(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("checkpoint format error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
