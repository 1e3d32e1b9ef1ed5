use thiserror::Error;

/// Errors raised by the workbench.
///
/// Variants that describe broken internal invariants (`ConsistencyFailure`,
/// `InternalInvariantViolation`, `AdaptationFailure`) indicate a bug in the
/// construction code, never a legitimate outcome for valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {type_label}")]
    InvalidRank { type_label: char, rank: usize },

    #[error("unknown root system type '{0}'")]
    UnknownType(String),

    #[error("roots are proportional (alpha = +-beta)")]
    ProportionalRoots,

    #[error("structure constant consistency failure: {0}")]
    ConsistencyFailure(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("base adaptation failed: {0}")]
    AdaptationFailure(String),

    #[error("factor index {index} out of range (space has {count} factors)")]
    BadFactorIndex { index: usize, count: usize },

    #[error("torus specification invalid: {0}")]
    InvalidTorus(String),

    #[error("painted set invalid: {0}")]
    InvalidPainting(String),

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("scale factors must be positive: {0}")]
    NotPositive(String),

    #[error("geodesic graph formula leaves the isotropy algebra: {0}")]
    FormulaEscape(String),

    #[error("lemma hypothesis is vacuous: {0}")]
    VacuousInput(String),

    #[error("two-module grading undefined for this painted diagram")]
    GradingUndefined,

    #[error("metric invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
