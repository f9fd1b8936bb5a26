use thiserror::Error;

/// Errors raised by graph construction, the checkers and the generators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected: vertex {unreachable} is unreachable from vertex {from}")]
    Disconnected { from: usize, unreachable: usize },

    #[error("graph must have at least {required} vertices, got {actual}")]
    TooFewVertices { required: usize, actual: usize },

    #[error("expected {expected} labels, got {actual}")]
    LabelCount { expected: usize, actual: usize },

    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),

    #[error("vertex set must be non-empty")]
    EmptySet,

    #[error("vertex set built for {set} vertices used with a graph of {graph} vertices")]
    SetSizeMismatch { set: usize, graph: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension {d} exceeds the resource guard of {max} for {kind}")]
    ResourceGuard {
        kind: &'static str,
        d: usize,
        max: usize,
    },

    #[error("invalid label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("instance has {n} vertices, above the solver limit of {max}")]
    InstanceTooLarge { n: usize, max: usize },

    #[error("invalid solver options: {0}")]
    InvalidOptions(String),

    #[error("construction {name} failed its self-check at d={d}: pair ({u}, {v}) not visible")]
    SelfCheckFailed {
        name: String,
        d: usize,
        u: usize,
        v: usize,
    },

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
