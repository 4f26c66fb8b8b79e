use thiserror::Error;

use crate::graph::VertexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {n} vertices exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid proportion: {0}")]
    InvalidProportion(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("size mismatch: graph has {graph} vertices, permutation has {perm}")]
    SizeMismatch { graph: usize, perm: usize },
    #[error("vertex set straddles both copies of the prism")]
    StraddlesCopies,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("oracle refuses graphs on {n} vertices (cap {cap})")]
    OracleCap { n: usize, cap: usize },
    #[error("exhaustive enumeration of {n}! permutations exceeds cap n <= {cap}; use sampling instead")]
    ExhaustiveCap { n: usize, cap: usize },
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("could not build T of size {expected}; partial T = {partial:?}")]
    ConstructionFailure { expected: usize, partial: VertexSet },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
