use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A factorial-type quantity was requested beyond the configured cap.
    /// Exact arithmetic stays exact up to the cap; past it we refuse instead
    /// of silently degrading.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point is not on the unit sphere (|v| deviates by {deviation:.3e})")]
    NotOnSphere { deviation: f64 },

    #[error("axis {axis} out of range for dimension {dim}")]
    IndexOutOfRange { axis: usize, dim: usize },

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("symbol is not Fredholm: sampled |det| reaches {min_abs_det:.3e}")]
    NotFredholm { min_abs_det: f64 },

    #[error("symbol is not unitary-valued: deviation {0:.3e}")]
    NotUnitarySymbol(f64),

    #[error("value {value} is not within {tolerance} of an integer")]
    NotConverged { value: f64, tolerance: f64 },

    #[error("symbol is not invertible on the circle: sampled |a| reaches {min_abs:.3e}")]
    NotInvertibleOnCircle { min_abs: f64 },

    #[error(
        "closed-form cross-check mismatch: max deviation {max_dev:.3e} exceeds {tolerance:.3e}"
    )]
    MismatchExceedsTolerance { max_dev: f64, tolerance: f64 },

    #[error("unsupported complex dimension {n} for this operation")]
    UnsupportedDimension { n: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
