use crate::graph::VertexId;

/// Errors raised by the library. Escapes that carry a usable witness are not
/// errors and are returned as ordinary enum variants by the operations that
/// produce them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("graph too large for exhaustive search: n = {n} > {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("palette exhausted while colouring member {member}")]
    PaletteExhausted { member: usize },

    #[error("strategy not applicable: {0}")]
    AdmissibilityViolated(String),

    #[error("internal invariant breach: {0}")]
    InternalInvariantBreach(String),

    #[error("insufficient edges: {have} < {need}")]
    InsufficientEdges { have: usize, need: usize },

    #[error("{0}")]
    InvalidConfig(String),

    #[error("no prefix of buckets reaches the size threshold ({total} < {threshold})")]
    NoJPrime { total: usize, threshold: String },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
