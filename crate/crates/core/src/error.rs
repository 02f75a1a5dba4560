use thiserror::Error;

use crate::graph::Vertex;
use crate::minor_sparse::DensityWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Vertex ids inside messages are printed 1-based, like the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {} out of range for a graph on {n} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("{0} is not a dominating set")]
    NotDominating(String),

    #[error("{0} is not a minimal dominating set")]
    NotMinimal(String),

    #[error("{0} is not an independent set")]
    NotIndependent(String),

    #[error("cannot add vertex {}: already present", .0 + 1)]
    RedundantAdd(Vertex),

    #[error("cannot remove vertex {}: not present", .0 + 1)]
    AbsentRemove(Vertex),

    #[error("graph has {n} vertices, above the brute-force limit of {limit}")]
    GraphTooLarge { n: usize, limit: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("intermediate set of size {size} exceeds the budget k = {k}")]
    BudgetExceeded { size: usize, k: usize },

    #[error("sets have an empty intersection")]
    EmptyIntersection,

    #[error("target is unreachable: {0}")]
    Unreachable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("graph is not {}-minor-sparse; density witness attached", .0.d)]
    NotMinorSparse(Box<DensityWitness>),

    /// An invariant the construction guarantees did not hold. Signals a wrong
    /// Γ / minimum dominating set input or an invalid decomposition.
    #[error("internal claim failed: {0}")]
    ClaimViolated(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
