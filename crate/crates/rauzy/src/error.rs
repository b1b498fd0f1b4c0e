use thiserror::Error;

/// Errors raised by pair construction and the combinatorial procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pair is reducible")]
    Reducible,
    #[error("pair is not standard")]
    NotStandard,
    #[error("pair is not piece-wise order reversing")]
    NotPwor,
    #[error("switch precondition violated: {0}")]
    Switch(String),
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("restriction precondition violated: {0}")]
    Restriction(String),
    #[error("invalid extension: {0}")]
    Extension(String),
    #[error("not reachable: {0}")]
    NotReachable(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("unknown letter: {0}")]
    UnknownLetter(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
