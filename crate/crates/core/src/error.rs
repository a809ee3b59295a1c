use crate::maxflow::TightFlowError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("a flow-generating cycle of forward arcs makes the instance unbounded")]
    Unbounded,
    #[error(transparent)]
    TightFlow(#[from] TightFlowError),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("gave up after {0} iterations")]
    IterationLimit(u64),
}
