use thiserror::Error;

/// Unified error type for the whole crate.
///
/// Message texts are part of the contract: callers (and the CLI's exit-code
/// mapping) match on the stable phrases below, e.g. `"dimension mismatch"`
/// or `"empty input"`.
#[derive(Debug, Error)]
pub enum Error {
    /// Two vectors or clouds that should share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Two clouds that should have equally many points do not.
    #[error("size mismatch: {left} points vs {right} points")]
    SizeMismatch { left: usize, right: usize },

    /// A coordinate was NaN or infinite.
    #[error("non-finite coordinate at point {row}, component {col}")]
    NonFiniteCoordinate { row: usize, col: usize },

    /// A cost matrix violated its invariants (squareness, finiteness, sign).
    #[error("invalid cost matrix: {0}")]
    InvalidCostMatrix(String),

    /// The factorial brute-force oracle refuses instances above its cap.
    #[error("instance too large for oracle: m = {0}")]
    OracleTooLarge(usize),

    /// An operation that splits a sample in half got fewer than two points.
    #[error("need at least two points, got {0}")]
    NeedTwoPoints(usize),

    /// A file or cloud with no data where at least one row is required.
    #[error("empty input")]
    EmptyInput,

    /// The sample covariance was not positive definite even after
    /// regularization.
    #[error("degenerate covariance")]
    DegenerateCovariance,

    /// A scalar or structural parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed input text; `line` and `column` are 1-based.
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand used by validation code throughout the crate.
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
