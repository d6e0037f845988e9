use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("unassigned variable `{0}` in evaluation")]
    Unassigned(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid leg selection: {0}")]
    InvalidLegs(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no real root: {0}")]
    NoRealRoot(String),
    #[error("integration aborted at step {step}: {reason}")]
    Unstable { step: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
