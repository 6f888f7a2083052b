use std::time::Duration;

use thiserror::Error;

/// Which resource cap a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    States(usize),
    Time(Duration),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("set is over a universe of {found} vertices, expected {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("set sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("{0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0:?}")]
    Budget(Resource),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
