use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group: {0}")]
    Group(String),
    #[error("invalid CM type: {0}")]
    CmType(String),
    #[error("duplicate factor: {0}")]
    DuplicateFactor(String),
    #[error("K too small: {0}")]
    KTooSmall(String),
    #[error("malformed scenario: {0}")]
    Malformed(String),
    #[error("isogeny collision: {0}")]
    IsogenyCollision(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("incompatible field: {0}")]
    IncompatibleField(String),
    #[error("rejected seed: {0}")]
    Seed(String),
    #[error("declared characters: {0}")]
    Declared(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
