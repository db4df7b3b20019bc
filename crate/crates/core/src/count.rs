//! Exact subtree, BC-subtree and leaf-containing BC-subtree counts.
//!
//! Counting is done by enumerating every connected vertex subset. Each
//! subset is grown from its minimum vertex and only extended through
//! vertices larger than that root, so it is produced exactly once without
//! remembering what was already seen.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::Tree;

pub const DEFAULT_ENUMERATION_CAP: usize = 24;
/// Subsets are bitmasks, which bounds any configurable cap.
pub const MAX_ENUMERATION_CAP: usize = 64;

/// A set of vertex ids of a tree with at most 64 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::default(), VertexSet::with)
    }
}

/// Streams every connected vertex subset of a tree exactly once.
pub struct Subtrees<'a> {
    tree: &'a Tree,
    next_root: usize,
    root: usize,
    stack: Vec<Frame>,
    pending: Option<VertexSet>,
}

struct Frame {
    set: VertexSet,
    /// Candidate vertices not yet decided; popped from the back.
    extension: Vec<usize>,
}

impl<'a> Subtrees<'a> {
    fn new(tree: &'a Tree) -> Self {
        Subtrees {
            tree,
            next_root: 0,
            root: 0,
            stack: Vec::new(),
            pending: None,
        }
    }
}

impl Iterator for Subtrees<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if let Some(set) = self.pending.take() {
                return Some(set);
            }
            let Some(frame) = self.stack.last_mut() else {
                if self.next_root >= self.tree.order() {
                    return None;
                }
                let root = self.next_root;
                self.next_root += 1;
                self.root = root;
                let set = VertexSet::singleton(root);
                let extension = self
                    .tree
                    .neighbors(root)
                    .iter()
                    .rev()
                    .copied()
                    .filter(|&w| w > root)
                    .collect();
                self.stack.push(Frame { set, extension });
                self.pending = Some(set);
                continue;
            };
            match frame.extension.pop() {
                None => {
                    self.stack.pop();
                }
                Some(u) => {
                    let set = frame.set.with(u);
                    let mut extension = frame.extension.clone();
                    // In a tree, a neighbor of `u` outside the set cannot touch the set elsewhere.
                    extension.extend(
                        self.tree
                            .neighbors(u)
                            .iter()
                            .rev()
                            .copied()
                            .filter(|&w| w > self.root && !set.contains(w)),
                    );
                    self.stack.push(Frame { set, extension });
                    self.pending = Some(set);
                }
            }
        }
    }
}

/// Per-tree bitmasks used to classify subtrees in O(|S|).
struct Classifier {
    neighbor_masks: Vec<u64>,
    even_mask: u64,
    leaf_mask: u64,
}

impl Classifier {
    fn new(t: &Tree) -> Self {
        let neighbor_masks = t
            .vertices()
            .map(|v| t.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let parity = t.bipartition(0).expect("vertex 0 exists");
        let even_mask = parity.even_class.iter().fold(0u64, |m, &v| m | 1 << v);
        let leaf_mask = t.leaves().iter().fold(0u64, |m, &v| m | 1 << v);
        Classifier {
            neighbor_masks,
            even_mask,
            leaf_mask,
        }
    }

    /// A connected subset is a BC-subtree iff it has at least three vertices
    /// and its own leaves all lie in one parity class of the host tree.
    fn is_bc(&self, set: VertexSet) -> bool {
        let bits = set.bits();
        if bits.count_ones() < 3 {
            return false;
        }
        let sub_leaves = set
            .iter()
            .filter(|&v| (self.neighbor_masks[v] & bits).count_ones() == 1)
            .fold(0u64, |m, v| m | 1 << v);
        sub_leaves & self.even_mask == 0 || sub_leaves & !self.even_mask == 0
    }

    fn touches_leaf(&self, set: VertexSet) -> bool {
        set.bits() & self.leaf_mask != 0
    }
}

/// All counts for one tree, gathered in a single enumeration pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountProfile {
    pub order: usize,
    pub total_subtrees: u64,
    pub total_bc: u64,
    pub total_leaf_bc: u64,
    pub per_vertex_subtrees: Vec<u64>,
    pub per_vertex_bc: Vec<u64>,
    /// Sum of the orders of all BC-subtrees.
    pub bc_order_sum: u64,
}

fn bump(counter: &mut u64, by: u64, what: &'static str) -> Result<()> {
    *counter = counter.checked_add(by).ok_or(Error::Overflow(what))?;
    Ok(())
}

/// Enumeration-based counter with a configurable order cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubtreeCounter {
    cap: usize,
}

impl Default for SubtreeCounter {
    fn default() -> Self {
        SubtreeCounter {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl SubtreeCounter {
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > MAX_ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                what: "enumeration cap",
                order: cap,
                cap: MAX_ENUMERATION_CAP,
            });
        }
        Ok(SubtreeCounter { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, t: &Tree) -> Result<()> {
        if t.order() > self.cap {
            return Err(Error::CapExceeded {
                what: "subtree enumeration",
                order: t.order(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn enumerate<'a>(&self, t: &'a Tree) -> Result<Subtrees<'a>> {
        self.check(t)?;
        Ok(Subtrees::new(t))
    }

    fn count_where(&self, t: &Tree, what: &'static str, keep: impl Fn(&Classifier, VertexSet) -> bool) -> Result<u64> {
        let classifier = Classifier::new(t);
        let mut total = 0u64;
        for set in self.enumerate(t)? {
            if keep(&classifier, set) {
                bump(&mut total, 1, what)?;
            }
        }
        Ok(total)
    }

    pub fn count_subtrees(&self, t: &Tree) -> Result<u64> {
        self.count_where(t, "subtrees", |_, _| true)
    }

    pub fn count_bc_subtrees(&self, t: &Tree) -> Result<u64> {
        self.count_where(t, "BC-subtrees", |c, s| c.is_bc(s))
    }

    pub fn count_bc_subtrees_containing(&self, t: &Tree, v: usize) -> Result<u64> {
        if !t.contains(v) {
            return Err(Error::UnknownVertex {
                vertex: v,
                order: t.order(),
            });
        }
        self.count_where(t, "BC-subtrees", |c, s| s.contains(v) && c.is_bc(s))
    }

    /// BC-subtrees that contain at least one leaf of `t` itself.
    pub fn count_leaf_bc_subtrees(&self, t: &Tree) -> Result<u64> {
        self.count_where(t, "leaf-containing BC-subtrees", |c, s| {
            c.touches_leaf(s) && c.is_bc(s)
        })
    }

    /// Every BC-subtree as a vertex set, in enumeration order.
    pub fn bc_subtrees(&self, t: &Tree) -> Result<Vec<VertexSet>> {
        let classifier = Classifier::new(t);
        Ok(self.enumerate(t)?.filter(|&s| classifier.is_bc(s)).collect())
    }

    pub fn profile(&self, t: &Tree) -> Result<CountProfile> {
        let classifier = Classifier::new(t);
        let n = t.order();
        let mut p = CountProfile {
            order: n,
            total_subtrees: 0,
            total_bc: 0,
            total_leaf_bc: 0,
            per_vertex_subtrees: vec![0; n],
            per_vertex_bc: vec![0; n],
            bc_order_sum: 0,
        };
        for set in self.enumerate(t)? {
            bump(&mut p.total_subtrees, 1, "subtrees")?;
            for v in set.iter() {
                bump(&mut p.per_vertex_subtrees[v], 1, "subtrees")?;
            }
            if classifier.is_bc(set) {
                bump(&mut p.total_bc, 1, "BC-subtrees")?;
                bump(&mut p.bc_order_sum, set.len() as u64, "BC-subtree orders")?;
                for v in set.iter() {
                    bump(&mut p.per_vertex_bc[v], 1, "BC-subtrees")?;
                }
                if classifier.touches_leaf(set) {
                    bump(&mut p.total_leaf_bc, 1, "leaf-containing BC-subtrees")?;
                }
            }
        }
        Ok(p)
    }
}

pub fn enumerate_subtrees(t: &Tree) -> Result<Subtrees<'_>> {
    SubtreeCounter::default().enumerate(t)
}

pub fn count_subtrees(t: &Tree) -> Result<u64> {
    SubtreeCounter::default().count_subtrees(t)
}

pub fn count_bc_subtrees(t: &Tree) -> Result<u64> {
    SubtreeCounter::default().count_bc_subtrees(t)
}

pub fn count_bc_subtrees_containing(t: &Tree, v: usize) -> Result<u64> {
    SubtreeCounter::default().count_bc_subtrees_containing(t, v)
}

pub fn count_leaf_bc_subtrees(t: &Tree) -> Result<u64> {
    SubtreeCounter::default().count_leaf_bc_subtrees(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMetric {
    Subtrees,
    Bc,
    LeafBc,
}

fn pow2(e: usize) -> Result<u64> {
    1u64.checked_shl(e as u32)
        .filter(|_| e < 64)
        .ok_or(Error::Overflow("2^(n-1)"))
}

/// Closed-form counts for paths `P_n` and stars `K_{1,n-1}`.
pub fn closed_form_count(family: Family, metric: CountMetric, n: usize) -> Result<u64> {
    let min = match metric {
        CountMetric::Subtrees => 1,
        CountMetric::Bc | CountMetric::LeafBc => 3,
    };
    if n < min {
        return Err(Error::OrderTooSmall {
            what: "closed form",
            order: n,
            min,
        });
    }
    let n64 = n as u64;
    let overflow = Error::Overflow("closed form");
    let value = match (family, metric) {
        (Family::Path, CountMetric::Subtrees) => n64
            .checked_mul(n64 + 1)
            .map(|x| x / 2)
            .ok_or(overflow)?,
        (Family::Star, CountMetric::Subtrees) => pow2(n - 1)?
            .checked_add(n64 - 1)
            .ok_or(overflow)?,
        (Family::Star, CountMetric::Bc | CountMetric::LeafBc) => pow2(n - 1)? - n64,
        (Family::Path, CountMetric::Bc) => {
            if n.is_multiple_of(2) {
                n64.checked_mul(n64 - 2).ok_or(overflow)? / 4
            } else {
                (n64 - 1).checked_mul(n64 - 1).ok_or(overflow)? / 4
            }
        }
        (Family::Path, CountMetric::LeafBc) => n64 - 2,
    };
    Ok(value)
}

/// BC-subtrees of `P_n` containing the `position`-th vertex (1-based).
pub fn path_vertex_bc_count(n: usize, position: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::OrderTooSmall {
            what: "path BC profile",
            order: n,
            min: 1,
        });
    }
    if position == 0 || position > n {
        return Err(Error::PositionOutOfRange { order: n, position });
    }
    let i = position as u64;
    let spans = i * (n as u64 + 1 - i);
    Ok(if i.is_multiple_of(2) { spans / 2 - 1 } else { (spans - 1) / 2 })
}
