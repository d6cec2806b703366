use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("node {0} has no neighbors")]
    IsolatedNode(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("product graph would have {nodes} nodes, more than the supported {max}")]
    SizeOverflow { nodes: u128, max: u128 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("{what} needs a dense computation on {n} nodes, above the cap of {cap}; supply the value manually")]
    TooLarge { what: &'static str, n: usize, cap: usize },

    #[error("numerical cross-check failed: {0}")]
    Mismatch(String),

    #[error("the walk on this graph is periodic (spectral gap parameter is 1)")]
    Periodic,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
