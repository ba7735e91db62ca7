use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars belong to different contexts")]
    ContextMismatch,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("operation needs parameter-free scalars: {0}")]
    Parametrized(String),
    #[error("parameter-dependent solvability")]
    ParameterDependentSolvability,
    #[error("bracket fails the Jacobi identity at {0:?}")]
    NotLie((usize, usize, usize)),
    #[error("not a contact form")]
    NotContact,
    #[error("basis is not a Darboux basis for omega_{0}; normalize it first")]
    NotDarboux(usize),
    #[error("{0}")]
    Hypothesis(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{0}` needs p")]
    MissingP(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
