use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("operands live on different complexes")]
    ParentMismatch,
    #[error("opens are not nested: {0}")]
    NotNested(String),
    #[error("opens overlap in simplex {witness}")]
    Overlap { witness: String },
    #[error("diagram is not functorial: {square}")]
    Functoriality { square: String },
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("orientability: {0}")]
    Orientability(String),
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("enumeration budget of {limit} exceeded while {context}")]
    Budget { limit: usize, context: String },
}

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Parse { .. } => "parse",
            Error::ParentMismatch => "parent-mismatch",
            Error::NotNested(_) => "not-nested",
            Error::Overlap { .. } => "overlap",
            Error::Functoriality { .. } => "functoriality",
            Error::IllDefinedHom(_) => "ill-defined-hom",
            Error::GroupMismatch(_) => "group-mismatch",
            Error::Precondition(_) => "precondition",
            Error::Orientability(_) => "orientability",
            Error::NotACover(_) => "not-a-cover",
            Error::InvalidCocycle(_) => "invalid-cocycle",
            Error::Unsupported(_) => "unsupported",
            Error::Budget { .. } => "budget",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
