use thiserror::Error;

use crate::superstar::SuperstarClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search budget of {budget} expanded positions exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("no comet is defined for a {0:?} superstar")]
    UndefinedComet(SuperstarClass),
    #[error("assignment is incomplete")]
    IncompleteAssignment,
    #[error("nimber value does not fit in a machine word: {0}")]
    WordOverflow(String),
    #[error("witness rejected: {0}")]
    InvalidWitness(String),
}

/// Coarse error classes, used for CLI exit statuses and HTTP status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Budget,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::BudgetExceeded { .. } => ErrorKind::Budget,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
