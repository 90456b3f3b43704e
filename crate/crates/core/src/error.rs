use thiserror::Error;

use crate::digraph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("loop at vertex {0}")]
    Loop(Vertex),

    #[error("parallel arc {0} -> {1}")]
    ParallelArc(Vertex, Vertex),

    #[error("digraph must have at least one vertex")]
    EmptyDigraph,

    #[error("digraph is not connected")]
    Disconnected,

    #[error("colouring has {got} entries but the digraph has {expected} vertices")]
    PartialColouring { expected: usize, got: usize },

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("vertex order is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("requested level k = {requested} but the digraph has maximum maxdegree {actual}")]
    LevelMismatch { requested: usize, actual: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant broken (unreachable case): {0}")]
    InternalUnreachable(String),

    #[error("iteration budget of {budget} partition states exceeded")]
    IterationBudgetExceeded { budget: u64 },

    #[error("digraph has {n} vertices, above the configured oracle limit of {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
