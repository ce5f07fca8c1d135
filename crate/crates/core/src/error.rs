use thiserror::Error;

/// Errors produced by the decoders, parsers and simulation harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller passed arguments outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A text input could not be parsed. `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    /// The graph does not satisfy a decoder's structural requirement.
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// Exhaustive enumeration would exceed the configured ceiling.
    #[error("{count} patterns exceed the exhaustive ceiling {ceiling}; use sample mode")]
    TooManyPatterns { count: u128, ceiling: u128 },

    #[error("subgraph has {size} variables, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
