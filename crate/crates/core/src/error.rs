use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("order {n} exceeds the limit {limit}")]
    OrderTooLarge { n: usize, limit: usize },
    #[error("exact search refused: order {n} exceeds budget {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("graph is not a {k}-tree")]
    NotAKTree { k: usize },
    #[error("order {n} is below the required minimum {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("not a perfect elimination ordering at vertex {vertex}")]
    InvalidEliminationOrder { vertex: usize },
    #[error("step {index}: {reason}")]
    StepFailed { index: usize, reason: String },
    #[error("invalid labeled 2-tree: {0}")]
    InvalidLabels(String),
    #[error("vertex ids are not contiguous from 0")]
    SparseIds,
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
