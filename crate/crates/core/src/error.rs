use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped so the command-line front end can map them onto
/// its exit codes: input problems, resource limits, and everything else.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("loop at vertex {0} is not allowed here")]
    LoopNotAllowed(usize),

    #[error("edge count mismatch: header declares {declared}, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("malformed input on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("end set is not independent: ({0}, {1}) is an edge")]
    EndsNotIndependent(usize, usize),

    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("unsupported field order q = {0}")]
    UnsupportedField(u32),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("exact arithmetic unavailable: {0}")]
    InexactInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::VertexOutOfRange { .. }
                | Error::DuplicateEdge(..)
                | Error::LoopNotAllowed(_)
                | Error::EdgeCountMismatch { .. }
                | Error::Parse { .. }
                | Error::EndsNotIndependent(..)
                | Error::TooLarge { .. }
                | Error::UnsupportedField(_)
                | Error::InvalidArgument(_)
                | Error::InexactInput(_)
        )
    }
}
