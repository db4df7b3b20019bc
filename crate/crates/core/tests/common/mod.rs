//! Test-only oracles, independent of the library's enumeration and
//! generation paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use bctree::{Tree, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into its tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> Tree {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges).unwrap()
}

/// Calls `f` on every labeled tree of order `n` (all `n^(n-2)` of them).
pub fn for_each_labeled_tree(n: usize, mut f: impl FnMut(Tree)) {
    match n {
        0 => {}
        1 => f(Tree::path(1)),
        2 => f(Tree::path(2)),
        _ => {
            let mut seq = vec![0usize; n - 2];
            loop {
                f(prufer_decode(&seq, n));
                let mut i = 0;
                loop {
                    if i == seq.len() {
                        return;
                    }
                    seq[i] += 1;
                    if seq[i] < n {
                        break;
                    }
                    seq[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Tree {
    if n <= 2 {
        return Tree::path(n.max(1));
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(&seq, n)
}

pub fn random_relabel(rng: &mut impl Rng, t: &Tree) -> Tree {
    let mut perm: Vec<usize> = (0..t.order()).collect();
    perm.shuffle(rng);
    t.relabeled(&perm).unwrap()
}

/// Brute-force isomorphism test by permutation search with degree pruning.
pub fn isomorphic(a: &Tree, b: &Tree) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn extend(a: &Tree, b: &Tree, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = map.len();
        if v == a.order() {
            return true;
        }
        for w in b.vertices() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            let consistent = a
                .neighbors(v)
                .iter()
                .filter(|&&u| u < v)
                .all(|&u| b.neighbors(w).contains(&map[u]));
            if !consistent {
                continue;
            }
            map.push(w);
            used[w] = true;
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    // Edges preserved among mapped pairs plus equal edge counts give an isomorphism.
    extend(a, b, &mut Vec::new(), &mut vec![false; n])
}

/// The subtree induced by a connected vertex set, relabeled to `0..k`.
pub fn induced(t: &Tree, set: &[usize]) -> Tree {
    let index = |v: usize| set.iter().position(|&x| x == v);
    let edges: Vec<(usize, usize)> = t
        .edges()
        .filter_map(|(u, v)| Some((index(u)?, index(v)?)))
        .collect();
    Tree::from_edges(set.len(), &edges).unwrap()
}

fn connected(t: &Tree, set: &[usize]) -> bool {
    let Some(&start) = set.first() else {
        return false;
    };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in t.neighbors(u) {
            if set.contains(&w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Every connected vertex subset, by scanning all `2^n` subsets.
pub fn brute_force_subtrees(t: &Tree) -> Vec<Vec<usize>> {
    let n = t.order();
    (1u64..1 << n)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|set| connected(t, set))
        .collect()
}

/// Independent BC test: build the induced subtree and check leaf distances.
pub fn brute_force_is_bc(t: &Tree, set: &[usize]) -> bool {
    let sub = induced(t, set);
    let leaves = sub.leaves();
    sub.order() >= 2
        && leaves
            .iter()
            .all(|&a| leaves.iter().all(|&b| sub.distance(a, b).unwrap().is_multiple_of(2)))
}

pub fn to_set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}
