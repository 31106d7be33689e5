use thiserror::Error;

use crate::hasse::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("a problem needs at least one variable")]
    EmptyProblem,

    #[error("signature is not a partition of 1..={n}: {detail}")]
    InvalidSignature { n: usize, detail: String },

    #[error("no edge {from} -> {to} in diagram")]
    NoSuchEdge { from: VertexId, to: VertexId },

    #[error("edge {from} -> {to} is frozen and cannot be contracted")]
    FrozenEdge { from: VertexId, to: VertexId },

    /// Internal consistency failure; never expected from a correct run.
    #[error("contradiction: {0}")]
    Contradiction(String),

    #[error("diagram is not terminal: vertex {0} is still monochromatic")]
    NotTerminal(VertexId),

    #[error("extremal vertex {0} is connected only through frozen edges")]
    Stuck(VertexId),

    #[error("monotone component of size {size} exceeds the bound {bound}")]
    ComponentTooLarge { size: usize, bound: usize },

    #[error("lattice enumeration exceeds the budget of {budget} points")]
    BudgetExceeded { budget: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("instance parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
