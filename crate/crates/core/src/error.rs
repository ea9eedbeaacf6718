use thiserror::Error;

use crate::graph::Vertex;
use crate::list::Color;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected: vertices {a} and {b} lie in different components")]
    Disconnected { a: Vertex, b: Vertex },

    #[error("graph is complete (K_{n}); no coloring with fewer than {n} colors exists")]
    CompleteGraph { n: usize },

    #[error("graph is an odd cycle of length {n}; it needs 3 colors")]
    OddCycle { n: usize },

    #[error("list of vertex {vertex} has {len} colors, at least {required} required")]
    ListTooSmall { vertex: Vertex, len: usize, required: usize },

    #[error("color {color} is not in the list of vertex {vertex}")]
    OffList { vertex: Vertex, color: Color },

    #[error("edge {u}-{v} is monochromatic (color {color})")]
    ImproperEdge { u: Vertex, v: Vertex, color: Color },

    #[error("no L-coloring exists on component {component:?}")]
    Infeasible { component: Vec<Vertex> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid k-tree order at index {index}: {reason}")]
    InvalidOrder { index: usize, reason: String },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable reason code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid-graph",
            Error::Disconnected { .. } => "disconnected",
            Error::CompleteGraph { .. } => "complete-graph",
            Error::OddCycle { .. } => "odd-cycle",
            Error::ListTooSmall { .. } => "list-too-small",
            Error::OffList { .. } => "off-list",
            Error::ImproperEdge { .. } => "improper-edge",
            Error::Infeasible { .. } => "infeasible",
            Error::Precondition(_) => "precondition",
            Error::InvalidOrder { .. } => "invalid-order",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::Unsupported(_) => "unsupported",
            Error::Schema { .. } => "schema",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}
