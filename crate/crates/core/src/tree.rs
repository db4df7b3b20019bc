//! Labeled trees on dense vertex ids, with the edge-list text format,
//! distances, parity classes and the BC-tree predicate.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

/// A tree on vertices `0..order`, stored as sorted adjacency lists.
///
/// Construction always validates: the adjacency is symmetric, there are
/// exactly `order - 1` edges and the graph is connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from an edge list over `0..order`.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if order == 0 {
            return Err(Error::InvalidTree("a tree has at least one vertex".into()));
        }
        if edges.len() + 1 != order {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                order
            )));
        }
        let mut dsu = DisjointSets::new(order);
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidTree(format!("edge {u} {v} leaves 0..{order}")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop on {u}")));
            }
            if !dsu.union(u, v) {
                return Err(Error::InvalidTree(format!("edge {u} {v} closes a cycle")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj })
    }

    /// Wraps adjacency lists that are already known to form a tree.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<Vec<usize>>) -> Tree {
        debug_assert!(Tree::check_adjacency(&adj).is_ok());
        Tree { adj }
    }

    fn check_adjacency(adj: &[Vec<usize>]) -> Result<()> {
        let edges: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        let rebuilt = Tree::from_edges(adj.len(), &edges)?;
        if rebuilt.adj != adj {
            return Err(Error::InvalidTree("adjacency is not symmetric and sorted".into()));
        }
        Ok(())
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1, "a path has at least one vertex");
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// The star `K_{1,n-1}` with center `0`.
    pub fn star(n: usize) -> Tree {
        assert!(n >= 1, "a star has at least one vertex");
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Tree::from_edges(n, &edges).expect("star is a tree")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Edges with the smaller endpoint first, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.order()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Degree-one vertices. A single-vertex tree reports its only vertex.
    pub fn leaves(&self) -> Vec<usize> {
        if self.order() == 1 {
            return vec![0];
        }
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Distances in edges from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Result<Vec<usize>> {
        self.check_vertex(source)?;
        let mut dist = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?[v])
    }

    /// All-pairs distances. Quadratic in memory; intended for larger trees
    /// queried many times.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        self.vertices()
            .map(|u| self.distances_from(u).expect("vertex in range"))
            .collect()
    }

    /// Largest distance from `v` to any vertex.
    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        Ok(self.distances_from(v)?.into_iter().max().unwrap_or(0))
    }

    pub fn bipartition(&self, reference: usize) -> Result<Bipartition> {
        let dist = self.distances_from(reference)?;
        let leaves: HashSet<usize> = self.leaves().into_iter().collect();
        let (even_class, odd_class): (Vec<usize>, Vec<usize>) =
            self.vertices().partition(|&v| dist[v] % 2 == 0);
        let even_leaves = even_class.iter().filter(|v| leaves.contains(v)).count();
        let odd_leaves = odd_class.iter().filter(|v| leaves.contains(v)).count();
        Ok(Bipartition {
            reference,
            even_size: even_class.len(),
            odd_size: odd_class.len(),
            even_class,
            odd_class,
            even_leaves,
            odd_leaves,
        })
    }

    /// True iff the tree has at least two vertices and every pair of leaves
    /// is at even distance.
    pub fn is_bc_tree(&self) -> bool {
        if self.order() < 2 {
            return false;
        }
        let leaves = self.leaves();
        let dist = self.distances_from(leaves[0]).expect("leaf in range");
        leaves.iter().all(|&l| dist[l].is_multiple_of(2))
    }

    /// The vertices of the unique path from `u` to `v`, both ends included.
    pub fn path_between(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut parent = vec![usize::MAX; self.order()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &w in &self.adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// The same tree with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Tree> {
        if perm.len() != self.order() {
            return Err(Error::InvalidTree("permutation length differs from order".into()));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(self.order(), &edges)
    }

    /// Edge-list text: a `p <order>` header followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.order());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Graphviz-compatible undirected graph description.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph T {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<[usize; 2]> = self.edges().map(|(u, v)| [u, v]).collect();
        let mut s = serializer.serialize_struct("Tree", 2)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}

/// The parity classes of a tree relative to a reference vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub reference: usize,
    pub even_class: Vec<usize>,
    pub odd_class: Vec<usize>,
    pub even_size: usize,
    pub odd_size: usize,
    pub even_leaves: usize,
    pub odd_leaves: usize,
}

impl Bipartition {
    pub fn is_even(&self, v: usize) -> bool {
        self.even_class.binary_search(&v).is_ok()
    }
}

/// A parsed tree together with the integer labels that appeared in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    pub tree: Tree,
    /// `labels[id]` is the input label of dense vertex `id`.
    pub labels: Vec<i64>,
}

impl LabeledTree {
    pub fn label(&self, v: usize) -> i64 {
        self.labels[v]
    }
}

/// Parses the edge-list format, discarding the original labels.
pub fn parse_edge_list(text: &str) -> Result<Tree, ParseError> {
    parse_edge_list_labeled(text).map(|lt| lt.tree)
}

/// Parses the edge-list format.
///
/// Blank lines and lines starting with `#` are ignored. The first content
/// line may be a `p <order>` header; with a header any integer labels are
/// accepted and relabeled densely in ascending order, without one the ids
/// must already be exactly `0..n`.
pub fn parse_edge_list_labeled(text: &str) -> Result<LabeledTree, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_edges: Vec<(usize, i64, i64)> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !seen_content && tokens.first() == Some(&"p") {
            seen_content = true;
            let order = match tokens.as_slice() {
                [_, n] => n.parse::<usize>().map_err(|_| ParseError::Malformed {
                    line,
                    reason: format!("bad order `{n}` in header"),
                })?,
                _ => {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "header must be `p <order>`".into(),
                    })
                }
            };
            if order == 0 {
                return Err(ParseError::Empty);
            }
            header = Some((line, order));
            continue;
        }
        seen_content = true;
        let [a, b] = tokens.as_slice() else {
            return Err(ParseError::Malformed {
                line,
                reason: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        };
        let parse_id = |tok: &str| {
            tok.parse::<i64>().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("`{tok}` is not an integer"),
            })
        };
        let (u, v) = (parse_id(a)?, parse_id(b)?);
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        raw_edges.push((line, u, v));
    }

    let mut seen_pairs = HashSet::new();
    for &(line, u, v) in &raw_edges {
        if !seen_pairs.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
    }

    // Collect labels with the line of first appearance.
    let mut first_seen: HashMap<i64, usize> = HashMap::new();
    for &(line, u, v) in &raw_edges {
        first_seen.entry(u).or_insert(line);
        first_seen.entry(v).or_insert(line);
    }
    let mut labels: Vec<i64> = first_seen.keys().copied().collect();
    labels.sort_unstable();

    let order = match header {
        Some((line, declared)) => {
            if labels.is_empty() {
                if declared == 1 {
                    labels.push(0);
                } else {
                    return Err(ParseError::Disconnected {
                        components: declared,
                    });
                }
            }
            if labels.len() > declared {
                return Err(ParseError::HeaderMismatch {
                    line,
                    declared,
                    found: labels.len(),
                });
            }
            if labels.len() < declared {
                // Declared vertices that never appear are isolated.
                return Err(ParseError::Disconnected {
                    components: declared - labels.len() + 1,
                });
            }
            declared
        }
        None => {
            if labels.is_empty() {
                return Err(ParseError::Empty);
            }
            let n = labels.len();
            let offending = raw_edges
                .iter()
                .flat_map(|&(line, u, v)| [(line, u), (line, v)])
                .find(|&(_, id)| id < 0 || id as usize >= n);
            if let Some((line, id)) = offending {
                return Err(ParseError::NonDenseIds { line, id, order: n });
            }
            n
        }
    };

    let index: HashMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut dsu = DisjointSets::new(order);
    let mut edges = Vec::with_capacity(raw_edges.len());
    for &(line, u, v) in &raw_edges {
        let (a, b) = (index[&u], index[&v]);
        if !dsu.union(a, b) {
            return Err(ParseError::Cycle { line, u, v });
        }
        edges.push((a, b));
    }
    if edges.len() + 1 != order {
        return Err(ParseError::Disconnected {
            components: order - edges.len(),
        });
    }
    let tree = Tree::from_edges(order, &edges).expect("validated above");
    Ok(LabeledTree { tree, labels })
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_trees() {
        let p3 = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(p3, Tree::path(3));
        assert_eq!(p3.degree(1), 2);

        let star = parse_edge_list("0 1\n0 2\n0 3").unwrap();
        assert_eq!(star, Tree::star(4));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(
            parse_edge_list("0 1\n1 2\n2 0"),
            Err(ParseError::Cycle { line: 3, u: 2, v: 0 })
        );
        assert_eq!(
            parse_edge_list("0 1\n1 0"),
            Err(ParseError::DuplicateEdge { line: 2, u: 1, v: 0 })
        );
        assert_eq!(
            parse_edge_list("0 1\n1 1"),
            Err(ParseError::SelfLoop { line: 2, vertex: 1 })
        );
        assert_eq!(
            parse_edge_list("0 1\n1 5"),
            Err(ParseError::NonDenseIds { line: 2, id: 5, order: 3 })
        );
        assert_eq!(
            parse_edge_list("0 1\n2 3"),
            Err(ParseError::Disconnected { components: 2 })
        );
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(parse_edge_list("\n# nothing\n"), Err(ParseError::Empty));
        assert_eq!(
            parse_edge_list("p 2\n0 1\n1 2"),
            Err(ParseError::HeaderMismatch { line: 1, declared: 2, found: 3 })
        );
    }

    #[test]
    fn header_densifies_labels() {
        let lt = parse_edge_list_labeled("p 3\n10 -4\n-4 7\n").unwrap();
        assert_eq!(lt.labels, vec![-4, 7, 10]);
        assert_eq!(lt.tree, Tree::from_edges(3, &[(2, 0), (0, 1)]).unwrap());

        let single = parse_edge_list_labeled("p 1\n").unwrap();
        assert_eq!(single.tree.order(), 1);
        assert_eq!(
            parse_edge_list("p 3\n0 1"),
            Err(ParseError::Disconnected { components: 2 })
        );
    }

    #[test]
    fn leaves_of_small_trees() {
        assert_eq!(Tree::path(4).leaves(), vec![0, 3]);
        assert_eq!(Tree::star(6).leaves(), vec![1, 2, 3, 4, 5]);
        assert_eq!(Tree::path(1).leaves(), vec![0]);
    }

    #[test]
    fn distances() {
        let p5 = Tree::path(5);
        assert_eq!(p5.distance(0, 4).unwrap(), 4);
        assert_eq!(p5.distance(2, 2).unwrap(), 0);
        assert_eq!(Tree::star(4).distance(1, 3).unwrap(), 2);
        assert_eq!(
            p5.distance(0, 9),
            Err(Error::UnknownVertex { vertex: 9, order: 5 })
        );
        assert_eq!(p5.path_between(3, 1).unwrap(), vec![3, 2, 1]);
    }

    #[test]
    fn bipartitions() {
        let b = Tree::path(5).bipartition(0).unwrap();
        assert_eq!((b.even_size, b.odd_size), (3, 2));
        assert_eq!((b.even_leaves, b.odd_leaves), (2, 0));

        let b = Tree::star(5).bipartition(0).unwrap();
        assert_eq!(b.even_class, vec![0]);
        assert_eq!(b.odd_class, vec![1, 2, 3, 4]);

        let b = Tree::path(6).bipartition(0).unwrap();
        assert_eq!((b.even_size, b.odd_size), (3, 3));
        assert!(Tree::path(3).bipartition(7).is_err());
    }

    #[test]
    fn bc_predicate() {
        assert!(Tree::path(3).is_bc_tree());
        assert!(!Tree::path(4).is_bc_tree());
        assert!(!Tree::path(2).is_bc_tree());
        assert!(!Tree::path(1).is_bc_tree());
        for n in 3..10 {
            assert!(Tree::star(n).is_bc_tree());
        }
    }

    #[test]
    fn dot_output() {
        assert_eq!(Tree::path(2).to_dot(), "graph T {\n  0;\n  1;\n  0 -- 1;\n}\n");
        let dot = Tree::star(4).to_dot();
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("  0 -- ").count(), 3);
    }

    #[test]
    fn from_edges_rejects_non_trees() {
        assert!(Tree::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Tree::from_edges(3, &[(0, 1)]).is_err());
        assert!(Tree::from_edges(2, &[(0, 2)]).is_err());
        assert!(Tree::from_edges(0, &[]).is_err());
    }
}
