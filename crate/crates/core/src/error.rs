use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("elements belong to different presentations")]
    PresentationMismatch,

    #[error("not supported: {0}")]
    NotSupported(String),

    #[error("word is not reduced")]
    NotReduced,

    #[error("group is infinite")]
    NotFinite,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
