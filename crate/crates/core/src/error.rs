use thiserror::Error;

/// Errors raised by the exact geometry pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Some `rank`-subset of columns is linearly dependent.
    #[error("configuration is not in general position: columns {subset:?} are dependent")]
    NotGeneralPosition { subset: Vec<usize> },

    #[error("random generation failed after {attempts} attempts: {reason}")]
    GenerationFailure { attempts: usize, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A self-check failed; this indicates a bug in an enumeration routine.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// The motion path is not generic enough to read off single mutations.
    #[error("degenerate motion path: {0}")]
    PathDegenerate(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
