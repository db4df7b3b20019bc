use thiserror::Error;

use crate::construct::FeasibilityVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why an edge-list document was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: i64, v: i64 },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: i64 },
    #[error("line {line}: cycle detected by edge {u} {v}")]
    Cycle { line: usize, u: i64, v: i64 },
    #[error("line {line}: vertex ids are not dense 0..{order} (offending id {id}); add a `p <order>` header to relabel")]
    NonDenseIds { line: usize, id: i64, order: usize },
    #[error("line {line}: header declares {declared} vertices but {found} distinct labels appear")]
    HeaderMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("disconnected input: {components} components")]
    Disconnected { components: usize },
    #[error("empty input: no vertices")]
    Empty,
}

impl ParseError {
    /// Line number (1-based) of the offending line, if the problem is local to one line.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Malformed { line, .. }
            | ParseError::DuplicateEdge { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::Cycle { line, .. }
            | ParseError::NonDenseIds { line, .. }
            | ParseError::HeaderMismatch { line, .. } => Some(*line),
            ParseError::Disconnected { .. } | ParseError::Empty => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} is not in a tree of order {order}")]
    UnknownVertex { vertex: usize, order: usize },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("{what}: order {order} is below the minimum {min}")]
    OrderTooSmall {
        what: &'static str,
        order: usize,
        min: usize,
    },
    #[error("position {position} is outside 1..={order}")]
    PositionOutOfRange { order: usize, position: usize },
    #[error("{what}: order {order} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("infeasible: {}", .0.reason)]
    Infeasible(FeasibilityVerdict),
    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),
    #[error("no BC-subtree exists in this tree")]
    NoBcSubtree,
    #[error("middle-part contract violated: {0}")]
    MiddlePartContract(String),
    #[error("integer overflow while counting {0}")]
    Overflow(&'static str),
}
