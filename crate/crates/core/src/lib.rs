//! BC-trees (trees whose leaves are pairwise at even distance): feasibility
//! and construction by order and leaf count, exact counting of subtrees and
//! BC-subtrees, the BC-subtree-core and related middle parts, exhaustive
//! free-tree generation, and a verification harness tying them together.

pub mod cli;
pub mod construct;
pub mod cores;
pub mod count;
pub mod error;
pub mod generate;
pub mod tree;
pub mod verify;

pub use construct::{construct, feasibility, FeasibilityReason, FeasibilityVerdict};
pub use cores::{CoreMetric, CoreReport};
pub use count::{CountProfile, SubtreeCounter, VertexSet};
pub use error::{Error, ParseError, Result};
pub use generate::{all_free_trees, canonical_form, CanonicalForm};
pub use tree::{parse_edge_list, Bipartition, Tree};
