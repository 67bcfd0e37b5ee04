use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported degree {degree}: {reason}")]
    UnsupportedDegree { degree: usize, reason: &'static str },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("generation failed after {restarts} restarts")]
    Generation { restarts: usize },

    #[error("not found within budget (best value {best})")]
    NotFound { best: usize },

    #[error("congestion violation: node {node} port {port} round {round} sent {bits} bits (limit {limit})")]
    Congestion {
        node: usize,
        port: usize,
        round: usize,
        bits: u32,
        limit: u32,
    },

    #[error("nodes {pending:?} did not terminate within {max_rounds} rounds")]
    NonTermination {
        max_rounds: usize,
        pending: Vec<usize>,
    },

    #[error("oracle budget exceeded: n = {n} > {limit}")]
    Budget { n: usize, limit: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
