use thiserror::Error;

use crate::colors::ColorSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget of {budget} exceeded while {context}")]
    BudgetExceeded { budget: u64, context: String },

    #[error("flip rejected: {0}")]
    FlipRejected(String),

    /// A maximal chain used a barrel arrow, so its sweep leaves a hole.
    #[error("chain step {step} is a barrel flip; the lifted cubillage would have a barrel hole")]
    BarrelHole { step: usize },

    #[error("stick {stick} is not monotone along the chain")]
    LiftInconsistency { stick: ColorSet },

    #[error("node set is not closed under the flip generator (missing target of a flip from node {from})")]
    NotClosed { from: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
