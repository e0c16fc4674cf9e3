use std::path::PathBuf;

use crate::subset::Subset;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element {element} is out of range for a ground set of size {universe}")]
    ElementOutOfRange { element: usize, universe: usize },

    #[error("universe mismatch: expected ground set of size {expected}, got {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("principal submatrix indexed by {subset} is not positive semidefinite")]
    NotPsd { subset: Subset },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
