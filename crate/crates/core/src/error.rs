use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("node {node} has no outgoing transition")]
    NoOutgoingTransition { node: usize },

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid sampler parameter: {0}")]
    InvalidParameter(String),

    #[error("stationary iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("dense analysis limited to {cap} nodes, graph has {n}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("eigenvalue solver did not converge")]
    EigenSolver,

    #[error("zero inclusion probability at node {node}")]
    ZeroInclusionProbability { node: usize },

    #[error("empty trace")]
    EmptyTrace,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
