use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime (need a prime <= 65536)")]
    InvalidPrime(u32),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("modules belong to different groups: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("invalid module: {}", .0.join("; "))]
    InvalidModule(Vec<String>),
    #[error("restriction words are linearly dependent over GF(p)")]
    DependentWords,
    #[error("transition table is not closed")]
    TableNotClosed,
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
