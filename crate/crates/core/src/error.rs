use thiserror::Error;

use crate::claw::ClawWitness;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every algorithm in the crate.
///
/// Variants fall into three groups: malformed input (`LoopEdge`, ...),
/// violated preconditions of an algorithm (`NotConnected`,
/// `PreconditionViolated`, ...), and internal invariant failures that must
/// never fire on valid input (`InternalInvariantViolation` and friends).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has non-positive weight")]
    NonPositiveWeight(usize),
    #[error("vertex id {id} out of range for {n} vertices")]
    IndexOutOfRange { id: usize, n: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },

    #[error("vertex set is not connected")]
    NotConnected,
    #[error("root {0} is not in the vertex set")]
    RootOutsideSubset(usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("induced claw found: {0}")]
    ClawWitnessFound(ClawWitness),
    #[error("need at least {k} vertices, graph has {n}")]
    TooFewVertices { n: usize, k: usize },
    #[error("need at least {k} edges, graph has {m}")]
    TooFewEdges { m: usize, k: usize },
    #[error("search value {x} outside 1..={max}")]
    XOutOfRange { x: u64, max: u64 },
    #[error("cannot reach {k} parts: {reason}")]
    CannotReachK { k: usize, reason: String },
    #[error("no component reaches the carving threshold")]
    NoBigComponent,
    #[error("no path from a leftover component to an unsatisfied set")]
    NoPath,

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no connected {0}-partition exists")]
    NoPartitionExists(usize),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("inner loop exceeded {0} iterations")]
    InnerLoopCapExceeded(usize),
    #[error("transfer loop exceeded {0} iterations")]
    LoopCapExceeded(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InnerLoopCapExceeded(_)
                | Error::LoopCapExceeded(_)
                | Error::InternalInvariantViolation(_)
                | Error::NoPath
        )
    }

    /// True for malformed graph input (as opposed to an algorithmic precondition).
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::LoopEdge(_)
                | Error::DuplicateEdge(..)
                | Error::NonPositiveWeight(_)
                | Error::IndexOutOfRange { .. }
                | Error::WeightCountMismatch { .. }
        )
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInvariantViolation(msg.into())
    }
}
