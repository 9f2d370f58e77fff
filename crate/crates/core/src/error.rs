use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("variable `{0}` has no binding and no counterpart in the target ring")]
    UnboundVariable(String),

    #[error("invalid variable table: {0}")]
    InvalidTable(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("Groebner budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Euler class has vanishing leading coefficient on component {0}")]
    DegenerateEuler(usize),

    #[error("Gram matrix is singular")]
    SingularGram,

    #[error("basis has {got} classes but the model has rank {expected}")]
    BasisCardinality { expected: usize, got: usize },

    #[error("diagonal decomposition does not reproduce the pushforward of 1")]
    DiagonalMismatch,

    #[error("cycle detected through vertex {0}")]
    Cycle(usize),

    #[error("edge lengths are not generic: subset {witness:?} splits the total length evenly")]
    NonGeneric { witness: Vec<usize> },

    #[error("subset {0:?} is not short")]
    NotShort(Vec<usize>),

    #[error("Weyl action does not preserve the ideal")]
    ActionNotInvariant,

    #[error("internal check failed: {0}")]
    CheckFailed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification of errors, used for exit codes and report fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Usage,
    NonGeneric,
    Budget,
    CheckFailed,
    Io,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::InvalidTable(_)
            | Error::NotShort(_) => ErrorKind::Usage,
            Error::NonGeneric { .. } => ErrorKind::NonGeneric,
            Error::BudgetExceeded(_) => ErrorKind::Budget,
            Error::CheckFailed(_)
            | Error::DiagonalMismatch
            | Error::ActionNotInvariant
            | Error::SingularGram => ErrorKind::CheckFailed,
            Error::Io(_) => ErrorKind::Io,
            _ => ErrorKind::Internal,
        }
    }
}

impl ErrorKind {
    /// Process exit status reported by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::CheckFailed => 1,
            ErrorKind::Usage => 2,
            ErrorKind::NonGeneric => 3,
            ErrorKind::Budget => 4,
            ErrorKind::Io => 5,
            ErrorKind::Internal => 6,
        }
    }
}
