use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negation is not available in the rig {0}")]
    NegationUnsupported(String),
    #[error("rig mismatch: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("arity error: {0}")]
    ArityError(String),
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("degree bound exceeded: {0}")]
    DegreeBoundExceeded(String),
    #[error("derivatives do not vanish within {0} steps")]
    NoFiniteSupport(usize),
    #[error("invalid Faa di Bruno family: {0}")]
    InvalidFamily(String),
    #[error("invalid Faa di Bruno sequence: {0}")]
    InvalidSequence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
