use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(
        "duplicate class `{name}` in project `{project}`: declared in {} and {}",
        first.display(),
        second.display()
    )]
    DuplicateClass {
        project: String,
        name: String,
        first: PathBuf,
        second: PathBuf,
    },

    /// A line-oriented input (rule, catalog, instance or truth file) could not be parsed.
    #[error("{}:{line}: {message}", file.display())]
    Syntax {
        file: PathBuf,
        line: usize,
        message: String,
    },

    /// A file parsed but describes an inconsistent pattern definition.
    #[error("{}: {message}", file.display())]
    Validation { file: PathBuf, message: String },

    #[error("bit vectors differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn syntax(file: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            file: file.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn validation(file: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Validation {
            file: file.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by rule or catalog content rather than I/O.
    pub fn is_definition_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Validation { .. })
    }
}
