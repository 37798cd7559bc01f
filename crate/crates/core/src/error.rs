use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty set has no connectivity verdict")]
    EmptySet,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A size limit or search budget was exceeded; the answer is unknown.
    #[error("{what} exceeds the configured threshold {limit}")]
    Refused { what: String, limit: u64 },

    #[error("search budget of {budget} nodes exhausted")]
    Timeout { budget: u64 },

    #[error("rotation at vertex {vertex} is inconsistent: {reason}")]
    Rotation { vertex: usize, reason: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors that signal a resource limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Refused { .. } | Error::Timeout { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
