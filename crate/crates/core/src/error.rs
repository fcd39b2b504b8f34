use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty request: {0}")]
    Empty(&'static str),

    #[error("{name} = {value} is outside {allowed}")]
    Domain {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("rank deficient regression: {0}")]
    Rank(String),

    #[error("dataset {name}: {reason}")]
    Resource { name: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("row {row}: {reason}")]
    Parse { row: usize, reason: String },

    #[error("column {0:?} not found")]
    MissingColumn(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, allowed: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            allowed,
        }
    }
}

impl Error {
    /// Process exit status used by the command-line tool: 2 for invalid
    /// requests, 3 for numerical failures, 4 for input/output problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Empty(_) | Error::Domain { .. } | Error::Shape(_) | Error::Range(_) => 2,
            Error::Degenerate(_) | Error::Numerical(_) | Error::Rank(_) => 3,
            Error::Resource { .. } | Error::Io { .. } | Error::Parse { .. } | Error::MissingColumn(_) => 4,
        }
    }
}
