use thiserror::Error;

use crate::graph::{EdgeId, RectId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown rectangle id {0}")]
    UnknownRectangle(RectId),
    #[error("duplicate target {0} in growth call")]
    DuplicateTarget(usize),
    #[error("{phase} growth expects {expected} targets")]
    WrongTargetKind {
        phase: &'static str,
        expected: &'static str,
    },
    #[error("vertex {0} out of range")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {0} has no incident edge")]
    IsolatedVertex(VertexId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("t = {t} exceeds the resource bound {bound}")]
    OverBound { t: u32, bound: u32 },
    #[error("invalid rule config: {0}")]
    InvalidConfig(String),
    #[error("no calibration anchors given")]
    NoAnchors,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("appendix tables need t >= 1")]
    ZeroStep,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("need at least 3 degree classes for a log-log fit, got {0}")]
    TooFewClasses(usize),
    #[error("zipf exponent must be positive, got {0}")]
    NonPositiveLambda(String),
    #[error("sampled distances need at least 2 sources, got {0}")]
    TooFewSources(usize),
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictError {
    #[error("t = {t} is outside the domain of {what} (needs t >= {min})")]
    Domain { what: &'static str, t: u32, min: u32 },
    #[error("{0} does not fit in 64 bits")]
    Overflow(&'static str),
    #[error("negative count in {0}")]
    Negative(&'static str),
    #[error("malformed fibonacci spec: {0}")]
    BadFibSpec(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MobiusError {
    #[error("recurrence needs r != 0")]
    ZeroR,
    #[error("recurrence needs p*s - q*r != 0")]
    Singular,
    #[error("n must be at least 1")]
    ZeroIndex,
    #[error("orbit hits the pole -s/r at step {0}")]
    Pole(usize),
    #[error("a1 equals the root mu; the distinct-root closed form is degenerate")]
    Degenerate,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanningError {
    #[error("graph has {0} vertices, above the bound {1}")]
    TooLarge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("deleted row {0} is out of range")]
    BadMinor(usize),
    #[error("enumeration exceeded the cap of {0} trees")]
    CapExceeded(u64),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("header/body mismatch: {0}")]
    Inconsistent(String),
    #[error("{0} format cannot be imported")]
    NotImportable(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
