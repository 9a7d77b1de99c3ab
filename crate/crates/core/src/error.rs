use std::path::PathBuf;

use crate::diagram::{Diagram, SymbolicDiagram};

/// Errors raised by the library and the batch interpreter.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("cannot parse diagram {text:?}: {reason}")]
    Parse { text: String, reason: String },

    /// A reduction stopped too early: the fully reduced diagram is still
    /// at least `m` layers long.
    #[error("tail enumeration failed for m = {m}: {diagram} is too long")]
    Enum { m: u32, diagram: Diagram },

    #[error("symbolic reduction did not decrease size: {from} -> {to}")]
    NoDescent {
        from: SymbolicDiagram,
        to: SymbolicDiagram,
    },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("dimension mismatch: expected {expected} points, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{modulus} is not a prime modulus below 2^32")]
    BadModulus { modulus: u64 },

    #[error("reduction of {system} exceeded {cap} iterations")]
    IterationCap { system: String, cap: u64 },

    #[error("line {line}: {message}")]
    Batch { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
