use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinresError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate map: {0}")]
    Degenerate(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("unbounded piecewise-linear function: {0}")]
    Unbounded(String),
    #[error("pair is not normalized")]
    NotNormalized,
    #[error("element has negative valuation")]
    NegativeValuation,
    #[error("singular matrix")]
    Singular,
    #[error("polynomial is not irreducible of the declared kind: {0}")]
    Reducible(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, MinresError>;

impl MinresError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            MinresError::ResourceCap(_) | MinresError::Precision(_) => 3,
            _ => 2,
        }
    }
}
