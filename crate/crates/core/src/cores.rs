//! "Middle parts" of a tree: center, centroid, subtree-core and
//! BC-subtree-core, plus the closed-form BC-subtree-core of a path.

use serde::Serialize;

use crate::count::{path_vertex_bc_count, SubtreeCounter};
use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreMetric {
    BcSubtreeCore,
    SubtreeCore,
    Center,
    Centroid,
}

impl CoreMetric {
    pub fn name(self) -> &'static str {
        match self {
            CoreMetric::BcSubtreeCore => "bc_subtree_core",
            CoreMetric::SubtreeCore => "subtree_core",
            CoreMetric::Center => "center",
            CoreMetric::Centroid => "centroid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMetric {
    Subtrees,
    BcSubtrees,
}

/// The extremal vertex set of one metric.
///
/// `extreme_value` is the maximum count for the two cores and the minimum
/// eccentricity (center) or minimum largest-branch order (centroid).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreReport {
    pub metric: CoreMetric,
    pub argmax_set: Vec<usize>,
    pub extreme_value: u64,
    pub max_pairwise_distance: usize,
    pub adjacent_only: bool,
}

impl CoreReport {
    fn new(metric: CoreMetric, argmax_set: Vec<usize>, extreme_value: u64, max_pairwise_distance: usize) -> Self {
        CoreReport {
            metric,
            argmax_set,
            extreme_value,
            max_pairwise_distance,
            adjacent_only: max_pairwise_distance <= 1,
        }
    }

    fn on_tree(t: &Tree, metric: CoreMetric, argmax_set: Vec<usize>, extreme_value: u64) -> Self {
        let spread = max_pairwise_distance(t, &argmax_set);
        CoreReport::new(metric, argmax_set, extreme_value, spread)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.argmax_set.binary_search(&v).is_ok()
    }
}

fn max_pairwise_distance(t: &Tree, set: &[usize]) -> usize {
    set.iter()
        .map(|&u| {
            let dist = t.distances_from(u).expect("core vertex in range");
            set.iter().map(|&v| dist[v]).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// All indices attaining the extreme, ascending.
fn extreme_set(values: &[u64], maximize: bool) -> (Vec<usize>, u64) {
    let best = if maximize {
        values.iter().copied().max()
    } else {
        values.iter().copied().min()
    }
    .expect("trees are nonempty");
    let set = (0..values.len()).filter(|&v| values[v] == best).collect();
    (set, best)
}

/// Center, centroid and subtree-core must be one vertex or two adjacent ones.
fn check_one_or_two_adjacent(report: CoreReport) -> Result<CoreReport> {
    if report.argmax_set.len() <= 2 && report.adjacent_only {
        Ok(report)
    } else {
        Err(Error::MiddlePartContract(format!(
            "{} is {:?}, expected one vertex or two adjacent vertices",
            report.metric.name(),
            report.argmax_set
        )))
    }
}

/// Per-vertex counts of subtrees or BC-subtrees containing each vertex.
pub fn vertex_profile(t: &Tree, metric: ProfileMetric, counter: &SubtreeCounter) -> Result<Vec<u64>> {
    let profile = counter.profile(t)?;
    Ok(match metric {
        ProfileMetric::Subtrees => profile.per_vertex_subtrees,
        ProfileMetric::BcSubtrees => profile.per_vertex_bc,
    })
}

pub fn bc_subtree_core(t: &Tree, counter: &SubtreeCounter) -> Result<CoreReport> {
    let values = vertex_profile(t, ProfileMetric::BcSubtrees, counter)?;
    bc_core_from_profile(t, &values)
}

pub(crate) fn bc_core_from_profile(t: &Tree, values: &[u64]) -> Result<CoreReport> {
    let (set, best) = extreme_set(values, true);
    if best == 0 {
        return Err(Error::NoBcSubtree);
    }
    Ok(CoreReport::on_tree(t, CoreMetric::BcSubtreeCore, set, best))
}

pub fn subtree_core(t: &Tree, counter: &SubtreeCounter) -> Result<CoreReport> {
    let values = vertex_profile(t, ProfileMetric::Subtrees, counter)?;
    subtree_core_from_profile(t, &values)
}

pub(crate) fn subtree_core_from_profile(t: &Tree, values: &[u64]) -> Result<CoreReport> {
    let (set, best) = extreme_set(values, true);
    check_one_or_two_adjacent(CoreReport::on_tree(t, CoreMetric::SubtreeCore, set, best))
}

/// Vertices of minimum eccentricity.
pub fn center(t: &Tree) -> Result<CoreReport> {
    let ecc: Vec<u64> = t
        .vertices()
        .map(|v| t.eccentricity(v).map(|e| e as u64))
        .collect::<Result<_>>()?;
    let (set, best) = extreme_set(&ecc, false);
    check_one_or_two_adjacent(CoreReport::on_tree(t, CoreMetric::Center, set, best))
}

/// Order of the largest component of `t - v`, for every `v`.
pub fn branch_weights(t: &Tree) -> Vec<u64> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![1u64; n];
    let mut heaviest_child = vec![0u64; n];
    for &v in order.iter().skip(1).rev() {
        let p = parent[v];
        size[p] += size[v];
        heaviest_child[p] = heaviest_child[p].max(size[v]);
    }
    (0..n)
        .map(|v| heaviest_child[v].max(n as u64 - size[v]))
        .collect()
}

/// Vertices minimizing the largest component left after deleting them.
pub fn centroid(t: &Tree) -> Result<CoreReport> {
    let (set, best) = extreme_set(&branch_weights(t), false);
    check_one_or_two_adjacent(CoreReport::on_tree(t, CoreMetric::Centroid, set, best))
}

/// BC-subtree-core of `P_n` (vertex `v_i` is id `i - 1`), from the
/// residue of `n` modulo 4.
pub fn path_bc_core(n: usize) -> Result<CoreReport> {
    if n < 3 {
        return Err(Error::OrderTooSmall {
            what: "path BC-subtree-core",
            order: n,
            min: 3,
        });
    }
    let sq = (n * n + 2 * n) as u64;
    let (positions, value): (Vec<usize>, u64) = match n % 4 {
        0 => (vec![n / 2, (n + 2) / 2], (sq - 8) / 8),
        2 => (vec![n / 2, (n + 2) / 2], (sq - 4) / 8),
        1 => (vec![n.div_ceil(2)], (sq - 3) / 8),
        _ => (vec![(n - 1) / 2, n.div_ceil(2), (n + 3) / 2], (sq - 7) / 8),
    };
    let spread = positions.last().unwrap() - positions.first().unwrap();
    let ids = positions.iter().map(|i| i - 1).collect();
    debug_assert!(positions
        .iter()
        .all(|&i| path_vertex_bc_count(n, i).ok() == Some(value)));
    Ok(CoreReport::new(CoreMetric::BcSubtreeCore, ids, value, spread))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartDistance {
    pub first: CoreMetric,
    pub second: CoreMetric,
    /// Minimum distance between a vertex of the first set and one of the second.
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiddlePartComparison {
    pub center: CoreReport,
    pub centroid: CoreReport,
    pub subtree_core: CoreReport,
    /// `None` when the tree has no BC-subtree at all.
    pub bc_subtree_core: Option<CoreReport>,
    pub distances: Vec<PartDistance>,
    pub subtree_core_in_bc_core: Option<bool>,
}

impl MiddlePartComparison {
    pub fn distance(&self, first: CoreMetric, second: CoreMetric) -> Option<usize> {
        self.distances
            .iter()
            .find(|d| (d.first, d.second) == (first, second) || (d.first, d.second) == (second, first))
            .map(|d| d.distance)
    }
}

fn set_distance(t: &Tree, a: &[usize], b: &[usize]) -> usize {
    a.iter()
        .map(|&u| {
            let dist = t.distances_from(u).expect("core vertex in range");
            b.iter().map(|&v| dist[v]).min().unwrap_or(usize::MAX)
        })
        .min()
        .unwrap_or(usize::MAX)
}

pub fn compare_middle_parts(t: &Tree, counter: &SubtreeCounter) -> Result<MiddlePartComparison> {
    let profile = counter.profile(t)?;
    let subtree = subtree_core_from_profile(t, &profile.per_vertex_subtrees)?;
    let bc = match bc_core_from_profile(t, &profile.per_vertex_bc) {
        Ok(report) => Some(report),
        Err(Error::NoBcSubtree) => None,
        Err(e) => return Err(e),
    };
    let center = center(t)?;
    let centroid = centroid(t)?;

    let parts: Vec<&CoreReport> = [Some(&center), Some(&centroid), Some(&subtree), bc.as_ref()]
        .into_iter()
        .flatten()
        .collect();
    let mut distances = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            distances.push(PartDistance {
                first: a.metric,
                second: b.metric,
                distance: set_distance(t, &a.argmax_set, &b.argmax_set),
            });
        }
    }
    let subtree_core_in_bc_core = bc
        .as_ref()
        .map(|bc| subtree.argmax_set.iter().all(|&v| bc.contains(v)));
    Ok(MiddlePartComparison {
        center,
        centroid,
        subtree_core: subtree,
        bc_subtree_core: bc,
        distances,
        subtree_core_in_bc_core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counter() -> SubtreeCounter {
        SubtreeCounter::default()
    }

    #[test]
    fn profiles() {
        let c = counter();
        assert_eq!(vertex_profile(&Tree::path(3), ProfileMetric::BcSubtrees, &c).unwrap(), vec![1, 1, 1]);
        assert_eq!(vertex_profile(&Tree::path(3), ProfileMetric::Subtrees, &c).unwrap(), vec![3, 4, 3]);
        assert_eq!(
            vertex_profile(&Tree::path(5), ProfileMetric::BcSubtrees, &c).unwrap(),
            vec![2, 3, 4, 3, 2]
        );
    }

    #[test]
    fn bc_cores() {
        let c = counter();
        let star = bc_subtree_core(&Tree::star(7), &c).unwrap();
        assert_eq!(star.argmax_set, vec![0]);
        assert!(star.adjacent_only);

        let p3 = bc_subtree_core(&Tree::path(3), &c).unwrap();
        assert_eq!(p3.argmax_set, vec![0, 1, 2]);
        assert_eq!(p3.max_pairwise_distance, 2);
        assert!(!p3.adjacent_only);

        let p8 = bc_subtree_core(&Tree::path(8), &c).unwrap();
        assert_eq!(p8.argmax_set, vec![3, 4]);
        assert_eq!(p8.extreme_value, 9);

        assert_eq!(bc_subtree_core(&Tree::path(2), &c), Err(Error::NoBcSubtree));
    }

    #[test]
    fn subtree_cores() {
        let c = counter();
        assert_eq!(subtree_core(&Tree::path(5), &c).unwrap().argmax_set, vec![2]);
        let p4 = subtree_core(&Tree::path(4), &c).unwrap();
        assert_eq!(p4.argmax_set, vec![1, 2]);
        assert!(p4.adjacent_only);
        assert_eq!(subtree_core(&Tree::star(6), &c).unwrap().argmax_set, vec![0]);
    }

    #[test]
    fn centers_and_centroids() {
        assert_eq!(center(&Tree::path(5)).unwrap().argmax_set, vec![2]);
        assert_eq!(center(&Tree::path(6)).unwrap().argmax_set, vec![2, 3]);
        assert_eq!(center(&Tree::star(5)).unwrap().argmax_set, vec![0]);
        assert_eq!(center(&Tree::path(1)).unwrap().argmax_set, vec![0]);

        assert_eq!(centroid(&Tree::path(4)).unwrap().argmax_set, vec![1, 2]);
        assert_eq!(centroid(&Tree::star(5)).unwrap().argmax_set, vec![0]);
        let double_star =
            Tree::from_edges(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)]).unwrap();
        let report = centroid(&double_star).unwrap();
        assert_eq!(report.argmax_set, vec![0, 1]);
        assert_eq!(report.extreme_value, 4);
    }

    #[test]
    fn closed_form_path_cores() {
        let r = path_bc_core(7).unwrap();
        assert_eq!((r.argmax_set.clone(), r.extreme_value), (vec![2, 3, 4], 7));
        assert_eq!(r.max_pairwise_distance, 2);
        let r = path_bc_core(6).unwrap();
        assert_eq!((r.argmax_set, r.extreme_value), (vec![2, 3], 5));
        let r = path_bc_core(5).unwrap();
        assert_eq!((r.argmax_set, r.extreme_value), (vec![2], 4));
        let r = path_bc_core(8).unwrap();
        assert_eq!((r.argmax_set, r.extreme_value), (vec![3, 4], 9));
        assert!(path_bc_core(2).is_err());
    }

    #[test]
    fn comparisons() {
        let c = counter();
        let cmp = compare_middle_parts(&Tree::path(3), &c).unwrap();
        assert_eq!(cmp.subtree_core.argmax_set, vec![1]);
        assert_eq!(cmp.center.argmax_set, vec![1]);
        assert_eq!(cmp.centroid.argmax_set, vec![1]);
        assert_eq!(cmp.bc_subtree_core.as_ref().unwrap().argmax_set, vec![0, 1, 2]);
        assert_eq!(cmp.subtree_core_in_bc_core, Some(true));
        assert_eq!(cmp.distance(CoreMetric::SubtreeCore, CoreMetric::BcSubtreeCore), Some(0));

        let cmp = compare_middle_parts(&Tree::star(7), &c).unwrap();
        for part in [&cmp.center, &cmp.centroid, &cmp.subtree_core, cmp.bc_subtree_core.as_ref().unwrap()] {
            assert_eq!(part.argmax_set, vec![0]);
        }
        assert!(cmp.distances.iter().all(|d| d.distance == 0));
        assert_eq!(cmp.distances.len(), 6);

        let cmp = compare_middle_parts(&Tree::path(2), &c).unwrap();
        assert!(cmp.bc_subtree_core.is_none());
        assert_eq!(cmp.subtree_core_in_bc_core, None);
        assert_eq!(cmp.distances.len(), 3);
    }
}
