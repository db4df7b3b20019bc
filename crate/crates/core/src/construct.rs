//! Feasibility of `(order, leaves)` pairs for BC-trees and the two
//! leaf-reducing constructions that realize every feasible pair.
//!
//! Vertices follow the `u_0, ..., u_{p-1}` naming of the constructions:
//! `u_0` is id `0` (the initial star center) and `u_{p-1}` is id `p - 1`.
//! Every "choose" step picks the lowest eligible id.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityReason {
    Ok,
    ExcludedPMinus2,
    ExcludedTwoLeavesEvenOrder,
    OutOfRange,
}

impl fmt::Display for FeasibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeasibilityReason::Ok => "ok",
            FeasibilityReason::ExcludedPMinus2 => "excluded_p_minus_2",
            FeasibilityReason::ExcludedTwoLeavesEvenOrder => "excluded_two_leaves_even_order",
            FeasibilityReason::OutOfRange => "out_of_range",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FeasibilityVerdict {
    pub order: usize,
    pub leaf_target: usize,
    pub feasible: bool,
    pub reason: FeasibilityReason,
}

/// Decides whether a BC-tree of order `p` with exactly `l` leaves exists.
///
/// When `l = p - 2` and `l = 2` coincide (`p = 4`) the `p - 2` exclusion is
/// reported.
pub fn feasibility(p: usize, l: usize) -> Result<FeasibilityVerdict> {
    if p < 3 {
        return Err(Error::OrderTooSmall {
            what: "BC-tree",
            order: p,
            min: 3,
        });
    }
    let reason = if l < 2 || l > p - 1 {
        FeasibilityReason::OutOfRange
    } else if l == p - 2 {
        FeasibilityReason::ExcludedPMinus2
    } else if l == 2 && p.is_multiple_of(2) {
        FeasibilityReason::ExcludedTwoLeavesEvenOrder
    } else {
        FeasibilityReason::Ok
    };
    Ok(FeasibilityVerdict {
        order: p,
        leaf_target: l,
        feasible: reason == FeasibilityReason::Ok,
        reason,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Algorithm1,
    Algorithm2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub tree: Tree,
    pub leaf_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub order: usize,
    pub phase: Phase,
    pub stages: Vec<Stage>,
}

impl ConstructionTrace {
    pub fn leaf_counts(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.leaf_count).collect()
    }

    pub fn last(&self) -> Option<&Tree> {
        self.stages.last().map(|s| &s.tree)
    }
}

/// Mutable working tree for the reorganization steps.
struct Workspace {
    adj: Vec<BTreeSet<usize>>,
}

impl Workspace {
    fn from_tree(t: &Tree) -> Self {
        Workspace {
            adj: t
                .vertices()
                .map(|v| t.neighbors(v).iter().copied().collect())
                .collect(),
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        let removed = self.adj[u].remove(&v) && self.adj[v].remove(&u);
        debug_assert!(removed, "edge {u}-{v} missing");
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn stage(&self) -> Result<Stage> {
        let edges: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        let tree = Tree::from_edges(self.adj.len(), &edges)
            .map_err(|e| Error::ConstructionInvariant(e.to_string()))?;
        if !tree.is_bc_tree() {
            return Err(Error::ConstructionInvariant(format!(
                "stage is not a BC-tree:\n{}",
                tree.to_edge_list()
            )));
        }
        let leaf_count = tree.leaf_count();
        Ok(Stage { tree, leaf_count })
    }
}

/// Starts from the star centered at `u_0` and repeatedly detaches two
/// leaves `q < r` of `u_0`, hanging `q` off `u_{p-1}` and `r` off `q`,
/// until `u_0` has degree at most 3.
///
/// Produces leaf counts `p-1, p-3, p-4, ..., ceil((p-1)/2)`.
pub fn run_algorithm1(p: usize) -> Result<ConstructionTrace> {
    if p < 3 {
        return Err(Error::OrderTooSmall {
            what: "algorithm 1",
            order: p,
            min: 3,
        });
    }
    let last = p - 1;
    let mut ws = Workspace::from_tree(&Tree::star(p));
    let mut stages = vec![ws.stage()?];
    while ws.degree(0) > 3 {
        let mut eligible = ws.adj[0].iter().copied().filter(|&v| v != last);
        let (q, r) = match (eligible.next(), eligible.next()) {
            (Some(q), Some(r)) => (q, r),
            _ => unreachable!("u_0 has degree > 3"),
        };
        ws.remove_edge(0, q);
        ws.remove_edge(0, r);
        ws.add_edge(last, q);
        ws.add_edge(q, r);
        stages.push(ws.stage()?);
    }
    let trace = ConstructionTrace {
        order: p,
        phase: Phase::Algorithm1,
        stages,
    };
    check_trace(&trace)?;
    Ok(trace)
}

/// Continues from the last tree of [`run_algorithm1`]: each step moves a
/// pendant path `<u_{p-1}, q, r>` (with `q != u_0`) so that `q` hangs off
/// the current reference vertex, which then becomes `r`. Stops once
/// `u_{p-1}` has degree 2.
///
/// The returned stages exclude the starting tree, which already closes the
/// first trace. Leaf counts run `ceil((p-1)/2) - 1` down to 2 (odd `p`) or
/// 3 (even `p`).
pub fn run_algorithm2(p: usize) -> Result<ConstructionTrace> {
    if p < 5 {
        return Err(Error::OrderTooSmall {
            what: "algorithm 2",
            order: p,
            min: 5,
        });
    }
    let last = p - 1;
    let start = run_algorithm1(p)?;
    let start_tree = start.last().expect("algorithm 1 emits at least one stage");
    let mut ws = Workspace::from_tree(start_tree);
    let mut reference = ws.adj[0]
        .iter()
        .copied()
        .find(|&v| v != last && ws.degree(v) == 1)
        .ok_or_else(|| Error::ConstructionInvariant("u_0 has no leaf besides u_{p-1}".into()))?;
    let mut stages = Vec::new();
    while ws.degree(last) != 2 {
        let (q, r) = ws.adj[last]
            .iter()
            .copied()
            .filter(|&q| q != 0 && ws.degree(q) == 2)
            .find_map(|q| {
                let r = ws.adj[q].iter().copied().find(|&r| r != last)?;
                (ws.degree(r) == 1).then_some((q, r))
            })
            .ok_or_else(|| {
                Error::ConstructionInvariant("no pendant path at u_{p-1}".into())
            })?;
        ws.remove_edge(last, q);
        ws.add_edge(reference, q);
        stages.push(ws.stage()?);
        reference = r;
    }
    let trace = ConstructionTrace {
        order: p,
        phase: Phase::Algorithm2,
        stages,
    };
    check_trace(&trace)?;
    Ok(trace)
}

fn check_trace(trace: &ConstructionTrace) -> Result<()> {
    for pair in trace.stages.windows(2) {
        if pair[1].leaf_count >= pair[0].leaf_count {
            return Err(Error::ConstructionInvariant(format!(
                "leaf counts not strictly decreasing: {:?}",
                trace.leaf_counts()
            )));
        }
    }
    if let Some(s) = trace.stages.iter().find(|s| s.tree.order() != trace.order) {
        return Err(Error::ConstructionInvariant(format!(
            "stage has order {} instead of {}",
            s.tree.order(),
            trace.order
        )));
    }
    Ok(())
}

/// Builds a BC-tree of order `p` with exactly `l` leaves.
pub fn construct(p: usize, l: usize) -> Result<Tree> {
    let verdict = feasibility(p, l)?;
    if !verdict.feasible {
        return Err(Error::Infeasible(verdict));
    }
    let first = run_algorithm1(p)?;
    let found = match first.stages.iter().find(|s| s.leaf_count == l) {
        Some(stage) => stage.tree.clone(),
        None => {
            let second = run_algorithm2(p)?;
            second
                .stages
                .into_iter()
                .find(|s| s.leaf_count == l)
                .map(|s| s.tree)
                .ok_or_else(|| {
                    Error::ConstructionInvariant(format!("no stage with {l} leaves for order {p}"))
                })?
        }
    };
    if found.order() != p || found.leaf_count() != l || !found.is_bc_tree() {
        return Err(Error::ConstructionInvariant(format!(
            "constructed tree does not meet (order {p}, leaves {l}, BC)"
        )));
    }
    Ok(found)
}

/// The traces that together cover every feasible leaf count of order `p`.
pub fn full_trace(p: usize) -> Result<Vec<ConstructionTrace>> {
    let mut traces = vec![run_algorithm1(p)?];
    if p >= 5 {
        traces.push(run_algorithm2(p)?);
    }
    Ok(traces)
}
