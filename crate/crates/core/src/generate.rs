//! Non-isomorphic free trees and an isomorphism-invariant canonical form.
//!
//! Generation walks canonical level sequences (Wright, Richmond, Odlyzko
//! and McKay): each free tree is visited once, rooted at its center, and
//! successors are produced by the Beyer-Hedetniemi rooted-tree step with a
//! jump over sequences that are not canonical for a free tree.

use std::fmt;

use serde::Serialize;

use crate::cores::branch_weights;
use crate::error::{Error, Result};
use crate::tree::Tree;

pub const DEFAULT_GENERATION_CAP: usize = 12;

/// Nested-parenthesis encoding of the tree rooted at its centroid, with
/// sibling encodings sorted. Equal strings iff isomorphic trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn rooted_encoding(t: &Tree, root: usize) -> String {
    fn encode(t: &Tree, v: usize, parent: usize) -> String {
        let mut children: Vec<String> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(t, w, v))
            .collect();
        children.sort_unstable();
        let mut out = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        out.push('(');
        children.iter().for_each(|c| out.push_str(c));
        out.push(')');
        out
    }
    encode(t, root, usize::MAX)
}

pub fn canonical_form(t: &Tree) -> CanonicalForm {
    let weights = branch_weights(t);
    let best = *weights.iter().min().expect("nonempty tree");
    let encoding = t
        .vertices()
        .filter(|&v| weights[v] == best)
        .map(|c| rooted_encoding(t, c))
        .min()
        .expect("a centroid exists");
    CanonicalForm(encoding)
}

/// Streams one representative of every isomorphism class of free trees of
/// a given order, in a fixed order.
pub struct FreeTrees {
    order: usize,
    layout: Option<Vec<usize>>,
}

impl FreeTrees {
    fn new(order: usize) -> Self {
        let layout = match order {
            0 => None,
            1 => Some(vec![0]),
            n => {
                // The path rooted at its center.
                let mut l: Vec<usize> = (0..=n / 2).collect();
                l.extend(1..n.div_ceil(2));
                Some(l)
            }
        };
        FreeTrees { order, layout }
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        let layout = self.layout.take()?;
        if self.order == 1 {
            return Some(layout_to_tree(&layout));
        }
        let valid = next_free_candidate(layout)?;
        self.layout = next_rooted(&valid, None);
        Some(layout_to_tree(&valid))
    }
}

/// One Beyer-Hedetniemi step: the next rooted level sequence, or `None`
/// after the star.
fn next_rooted(pred: &[usize], start: Option<usize>) -> Option<Vec<usize>> {
    let p = match start {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while p > 0 && pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] + 1 != pred[p] {
        q -= 1;
    }
    let mut next = pred.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Splits off the first subtree of the root: returns its level sequence
/// (re-rooted) and the rest of the tree.
fn split_first_subtree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Returns `candidate` if it is the canonical center-rooted sequence of a
/// free tree, otherwise jumps to the next candidate that is.
fn next_free_candidate(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_first_subtree(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let valid = rest_height > left_height
        || (rest_height == left_height
            && (left.len() < rest.len() || (left.len() == rest.len() && left <= rest)));
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_first_subtree(&next);
        let new_left_height = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        let suffix_len = new_left_height + 1;
        for (k, slot) in next[len - suffix_len..].iter_mut().enumerate() {
            *slot = k + 1;
        }
    }
    Some(next)
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut adj = vec![Vec::new(); layout.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if layout[top] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&parent) = stack.last() {
            adj[i].push(parent);
            adj[parent].push(i);
        }
        stack.push(i);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Tree::from_adjacency_unchecked(adj)
}

pub fn all_free_trees(n: usize) -> Result<FreeTrees> {
    all_free_trees_capped(n, DEFAULT_GENERATION_CAP)
}

pub fn all_free_trees_capped(n: usize, cap: usize) -> Result<FreeTrees> {
    if n == 0 {
        return Err(Error::OrderTooSmall {
            what: "free tree generation",
            order: 0,
            min: 1,
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "free tree generation",
            order: n,
            cap,
        });
    }
    Ok(FreeTrees::new(n))
}
