use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex id {0} (graph has {1} vertices)")]
    InvalidVertex(usize, usize),

    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),

    #[error("no edge between {0} and {1}")]
    MissingEdge(usize, usize),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("degree bound {bound} exceeded by vertex {vertex} (degree {degree})")]
    DegreeBound {
        vertex: usize,
        degree: usize,
        bound: usize,
    },

    #[error("operation requires a degree bound (bounded-degree model)")]
    UnboundedDegree,

    #[error("operation requires edge weights")]
    Unweighted,

    #[error("weight {0} is below 1")]
    WeightTooSmall(String),

    #[error("exact search budget exceeded: {what} has size {size}, limit {limit}")]
    Budget {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{family} needs n >= {min}, got {n}")]
    TooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
