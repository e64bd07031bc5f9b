use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an input value was violated.
    #[error("domain error in `{field}`: {message}")]
    Domain {
        field: &'static str,
        message: String,
    },

    /// The integration produced a non-finite value or tripped the divergence guard.
    #[error("numerical failure{}: {message} (max |f| = {max_abs:e})", step_suffix(*.step))]
    Numerics {
        step: Option<usize>,
        max_abs: f64,
        message: String,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn step_suffix(step: Option<usize>) -> String {
    match step {
        Some(n) => format!(" at step {n}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn domain(field: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            field,
            message: message.into(),
        }
    }

    pub(crate) fn numerics(max_abs: f64, message: impl Into<String>) -> Self {
        Error::Numerics {
            step: None,
            max_abs,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches a step index to a numerics error; other variants pass through.
    pub(crate) fn at_step(self, n: usize) -> Self {
        match self {
            Error::Numerics {
                max_abs, message, ..
            } => Error::Numerics {
                step: Some(n),
                max_abs,
                message,
            },
            other => other,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerics { .. } => 2,
            _ => 1,
        }
    }
}
