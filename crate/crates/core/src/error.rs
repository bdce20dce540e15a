use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature did not reach working precision.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The solver produced a non-finite state.
    #[error("non-finite state at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    /// A compartment went too far negative to be rounding noise.
    #[error("compartment {compartment} = {value} at step {step} is below -{threshold}")]
    Negativity {
        step: usize,
        compartment: &'static str,
        value: f64,
        threshold: f64,
    },

    /// Scenario or parameter validation failure. `line` is 1-based when the
    /// problem comes from a file.
    #[error("{}", validation_message(key, *line, message))]
    Validation {
        key: String,
        line: Option<usize>,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn validation_message(key: &str, line: Option<usize>, message: &str) -> String {
    match line {
        Some(line) => format!("line {line}: {key}: {message}"),
        None => format!("{key}: {message}"),
    }
}

impl Error {
    pub(crate) fn validation(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            key: key.into(),
            line: None,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches a file line number to a validation error that lacks one.
    pub(crate) fn at_line(self, at: usize) -> Self {
        match self {
            Error::Validation {
                key,
                line: None,
                message,
            } => Error::Validation {
                key,
                line: Some(at),
                message,
            },
            other => other,
        }
    }
}
