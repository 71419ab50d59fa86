use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tag {raw:?} is empty after normalization")]
    RejectedTag { raw: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid generation spec: {0}")]
    Spec(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("term {term:?} is already in the lexicon")]
    Conflict { term: String },

    #[error("support for itemset {{{}}} is missing; input is not downward closed", items.join(","))]
    InputNotClosed { items: Vec<String> },

    #[error("{distinct} distinct items exceed the brute-force limit of {limit}")]
    OracleScale { distinct: usize, limit: usize },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("no posts carry a category assignment")]
    NoAssignedPosts,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches the file a parse or row error came from.
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        match self {
            e @ (Error::Io { .. } | Error::InFile { .. }) => e,
            other => Error::InFile {
                path: path.into(),
                source: Box::new(other),
            },
        }
    }

    /// True for errors caused by the data (as opposed to bad arguments).
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Config(_) | Error::Spec(_))
    }
}
