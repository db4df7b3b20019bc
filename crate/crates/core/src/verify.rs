//! Exhaustive verification harness: checks the closed forms, extremal
//! results, construction coverage and middle-part behaviour against
//! enumeration over every free tree up to a given order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{construct, feasibility, full_trace};
use crate::cores::{
    bc_core_from_profile, bc_subtree_core, center, centroid, path_bc_core, subtree_core_from_profile,
};
use crate::count::{closed_form_count, path_vertex_bc_count, CountMetric, CountProfile, Family, SubtreeCounter};
use crate::error::{Error, Result};
use crate::generate::{all_free_trees, all_free_trees_capped, canonical_form, DEFAULT_GENERATION_CAP};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Formulas,
    Extremal,
    Construction,
    Cores,
    /// Recovers the order-9 split-core tree and the order-11 concavity witness.
    Figures,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Formulas,
        Suite::Extremal,
        Suite::Construction,
        Suite::Cores,
        Suite::Figures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Extremal => "extremal",
            Suite::Construction => "construction",
            Suite::Cores => "cores",
            Suite::Figures => "figures",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub claim: String,
    pub edge_list: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suites: Vec<SuiteReport>,
    pub counterexamples: Vec<Counterexample>,
    pub totals: Totals,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for suite in &self.suites {
            let tag = if suite.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {}", suite.name);
            for line in &suite.details {
                let _ = writeln!(out, "  {line}");
            }
            for cx in &suite.counterexamples {
                let _ = writeln!(out, "  counterexample ({}): {}", cx.claim, cx.observed);
                for line in cx.edge_list.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        let _ = writeln!(
            out,
            "totals: {} passed, {} failed",
            self.totals.passed, self.totals.failed
        );
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest tree order examined by the exhaustive and family checks.
    pub max_order: usize,
    pub generation_cap: usize,
    pub counter: SubtreeCounter,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_order: 10,
            generation_cap: DEFAULT_GENERATION_CAP,
            counter: SubtreeCounter::default(),
        }
    }
}

/// Accumulates the outcome of one suite.
struct SuiteBuilder {
    name: &'static str,
    details: Vec<String>,
    counterexamples: Vec<Counterexample>,
    mismatches: usize,
}

impl SuiteBuilder {
    fn new(suite: Suite) -> Self {
        SuiteBuilder {
            name: suite.name(),
            details: Vec::new(),
            counterexamples: Vec::new(),
            mismatches: 0,
        }
    }

    fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    /// Records a formula mismatch that is not tied to a particular tree.
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.mismatches += 1;
            self.details.push(format!("mismatch: {}", what()));
        }
    }

    fn counterexample(&mut self, claim: &str, t: &Tree, observed: String) {
        self.counterexamples.push(Counterexample {
            claim: claim.to_string(),
            edge_list: t.to_edge_list(),
            observed,
        });
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            passed: self.mismatches == 0 && self.counterexamples.is_empty(),
            details: self.details,
            counterexamples: self.counterexamples,
        }
    }
}

pub fn run(suites: &[Suite], options: &VerifyOptions) -> Result<VerificationReport> {
    if options.max_order > options.generation_cap {
        return Err(Error::CapExceeded {
            what: "verification order",
            order: options.max_order,
            cap: options.generation_cap,
        });
    }
    let mut reports = Vec::new();
    for &suite in suites {
        reports.push(match suite {
            Suite::Formulas => formulas(options)?,
            Suite::Extremal => extremal(options)?,
            Suite::Construction => construction(options)?,
            Suite::Cores => cores(options)?,
            Suite::Figures => figures(options)?,
        });
    }
    let counterexamples = reports
        .iter()
        .flat_map(|r| r.counterexamples.iter().cloned())
        .collect();
    let passed = reports.iter().filter(|r| r.passed).count();
    Ok(VerificationReport {
        totals: Totals {
            passed,
            failed: reports.len() - passed,
        },
        suites: reports,
        counterexamples,
    })
}

fn formulas(options: &VerifyOptions) -> Result<SuiteReport> {
    let counter = &options.counter;
    let n_max = options.max_order;
    let mut s = SuiteBuilder::new(Suite::Formulas);
    for n in 1..=n_max {
        let (path, star) = (Tree::path(n), Tree::star(n));
        let path_counts = counter.profile(&path)?;
        let star_counts = counter.profile(&star)?;
        let expected = closed_form_count(Family::Path, CountMetric::Subtrees, n)?;
        s.check(path_counts.total_subtrees == expected, || {
            format!("subtrees(P{n}) = {} != {expected}", path_counts.total_subtrees)
        });
        let expected = closed_form_count(Family::Star, CountMetric::Subtrees, n)?;
        s.check(star_counts.total_subtrees == expected, || {
            format!("subtrees(K1,{}) = {} != {expected}", n - 1, star_counts.total_subtrees)
        });
        if n < 3 {
            continue;
        }
        for (family, counts) in [(Family::Path, &path_counts), (Family::Star, &star_counts)] {
            for (metric, observed) in [
                (CountMetric::Bc, counts.total_bc),
                (CountMetric::LeafBc, counts.total_leaf_bc),
            ] {
                let expected = closed_form_count(family, metric, n)?;
                s.check(observed == expected, || {
                    format!("{family:?} {metric:?} at n={n}: enumerated {observed}, closed form {expected}")
                });
            }
        }
        for i in 1..=n {
            let expected = path_vertex_bc_count(n, i)?;
            let observed = path_counts.per_vertex_bc[i - 1];
            s.check(observed == expected, || {
                format!("BC-subtrees of P{n} through v{i}: enumerated {observed}, formula {expected}")
            });
        }
        if n >= 5 {
            let shorter = counter.count_bc_subtrees(&Tree::path(n - 2))?;
            s.check(path_counts.total_leaf_bc + shorter == path_counts.total_bc, || {
                format!("leaf-BC deletion identity fails for P{n}")
            });
        }
    }
    s.detail(format!(
        "path and star closed forms, per-vertex path formula and deletion identity checked for n <= {n_max}"
    ));
    Ok(s.finish())
}

/// Free trees of one order with their count profiles, in generation order.
fn profiled_trees(n: usize, options: &VerifyOptions) -> Result<Vec<(Tree, CountProfile)>> {
    let trees: Vec<Tree> = all_free_trees_capped(n, options.generation_cap)?.collect();
    trees
        .into_par_iter()
        .map(|t| {
            let p = options.counter.profile(&t)?;
            Ok((t, p))
        })
        .collect()
}

fn extremal(options: &VerifyOptions) -> Result<SuiteReport> {
    let mut s = SuiteBuilder::new(Suite::Extremal);
    let mut examined = Vec::new();
    for n in 2..=options.max_order {
        let trees = profiled_trees(n, options)?;
        examined.push(trees.len());
        let path_form = canonical_form(&Tree::path(n));
        let star_form = canonical_form(&Tree::star(n));
        let edges = 2 * n as u64 - 1;
        for (t, p) in &trees {
            let form = canonical_form(t);
            let (is_path, is_star) = (form == path_form, form == star_form);
            let gap = p.total_subtrees - edges;
            if p.total_bc > gap || (!is_star && p.total_bc == gap) {
                s.counterexample(
                    "bc <= subtrees - (2n-1), strict unless star",
                    t,
                    format!("bc {} subtrees {}", p.total_bc, p.total_subtrees),
                );
            }
            if p.per_vertex_bc.iter().sum::<u64>() != p.bc_order_sum {
                s.counterexample("handshake identity", t, format!("{:?}", p.per_vertex_bc));
            }
            if n < 3 {
                continue;
            }
            let star_bc = closed_form_count(Family::Star, CountMetric::Bc, n)?;
            let path_bc = closed_form_count(Family::Path, CountMetric::Bc, n)?;
            if (is_star && p.total_bc != star_bc) || (!is_star && p.total_bc >= star_bc) {
                s.counterexample(
                    "star uniquely maximizes BC-subtrees",
                    t,
                    format!("bc {} vs star {star_bc}", p.total_bc),
                );
            }
            if (is_path && p.total_bc != path_bc) || (!is_path && p.total_bc <= path_bc) {
                s.counterexample(
                    "path uniquely minimizes BC-subtrees",
                    t,
                    format!("bc {} vs path {path_bc}", p.total_bc),
                );
            }
            let lower = n as u64 - 2;
            let leaf = p.total_leaf_bc;
            if leaf < lower || leaf > star_bc || (leaf == lower) != is_path || (leaf == star_bc) != is_star {
                s.counterexample(
                    "n-2 <= leaf-BC <= 2^(n-1)-n, equality exactly at path / star",
                    t,
                    format!("leaf-bc {leaf}, bounds [{lower}, {star_bc}]"),
                );
            }
        }
    }
    s.detail(format!(
        "free trees examined per order 2..={}: {}",
        options.max_order,
        examined.iter().map(usize::to_string).collect::<Vec<_>>().join(" + ")
    ));
    Ok(s.finish())
}

fn construction(options: &VerifyOptions) -> Result<SuiteReport> {
    let mut s = SuiteBuilder::new(Suite::Construction);
    let p_max = options.max_order.max(3);
    for p in 3..=p_max {
        let mut feasible = BTreeSet::new();
        for l in 1..=p {
            let verdict = feasibility(p, l)?;
            match construct(p, l) {
                Ok(t) => {
                    if !verdict.feasible {
                        s.counterexample("construction refuses infeasible pairs", &t, format!("l = {l}"));
                    } else if t.order() != p || t.leaf_count() != l || !t.is_bc_tree() {
                        s.counterexample(
                            "constructed tree is an l-BC-tree of order p",
                            &t,
                            format!("p {p} l {l}"),
                        );
                    }
                }
                Err(Error::Infeasible(v)) => s.check(!verdict.feasible && v == verdict, || {
                    format!("({p}, {l}) refused with {} but verdict is {}", v.reason, verdict.reason)
                }),
                Err(e) => return Err(e),
            }
            if verdict.feasible {
                feasible.insert(l);
            }
        }
        let reachable: BTreeSet<usize> = full_trace(p)?
            .iter()
            .flat_map(|trace| trace.leaf_counts())
            .collect();
        s.check(reachable == feasible, || {
            format!("p = {p}: traces reach {reachable:?}, feasible set {feasible:?}")
        });
        // Independent check of the existence claim on every free tree of order p.
        if p <= options.generation_cap {
            let realized: BTreeSet<usize> = all_free_trees_capped(p, options.generation_cap)?
                .filter(Tree::is_bc_tree)
                .map(|t| t.leaf_count())
                .collect();
            s.check(realized == feasible, || {
                format!("p = {p}: BC-trees realize leaf counts {realized:?}, feasible set {feasible:?}")
            });
        }
    }
    s.detail(format!(
        "feasibility, construction and exhaustive leaf-count realization checked for 3 <= p <= {p_max}"
    ));
    Ok(s.finish())
}

/// Five consecutive vertices `a, b, c, d, e` on a path with
/// `bc(c) < max(bc(a), bc(e))`.
pub fn alternate_concavity_failure(t: &Tree, bc: &[u64]) -> Option<[usize; 5]> {
    for a in t.vertices() {
        let dist = t.distances_from(a).expect("vertex in range");
        for e in t.vertices().filter(|&e| e > a && dist[e] == 4) {
            let path = t.path_between(a, e).expect("vertices in range");
            let c = path[2];
            if bc[c] < bc[a].max(bc[e]) {
                return Some([path[0], path[1], path[2], path[3], path[4]]);
            }
        }
    }
    None
}

fn cores(options: &VerifyOptions) -> Result<SuiteReport> {
    let counter = &options.counter;
    let mut s = SuiteBuilder::new(Suite::Cores);
    let n_max = options.max_order;

    for n in 3..=n_max {
        let path = Tree::path(n);
        let computed = bc_subtree_core(&path, counter)?;
        let closed = path_bc_core(n)?;
        s.check(
            computed.argmax_set == closed.argmax_set && computed.extreme_value == closed.extreme_value,
            || format!("P{n}: enumerated core {computed:?}, closed form {closed:?}"),
        );
        let star = bc_subtree_core(&Tree::star(n), counter)?;
        let expected: Vec<usize> = if n == 3 { vec![0, 1, 2] } else { vec![0] };
        s.check(star.argmax_set == expected, || {
            format!("K1,{}: BC-subtree-core {:?}", n - 1, star.argmax_set)
        });
    }

    let witness_order = n_max.max(11).min(options.generation_cap);
    let mut split_core_witness: Option<Tree> = None;
    let mut concavity_witness: Option<(Tree, [usize; 5])> = None;
    let mut widest_core: Option<(usize, Tree)> = None;
    let mut widest_gap: Option<(usize, Tree)> = None;
    for n in 1..=witness_order {
        let trees = profiled_trees(n, options)?;
        for (t, p) in &trees {
            let exhaustive = n <= n_max;
            let subtree = subtree_core_from_profile(t, &p.per_vertex_subtrees);
            for (name, report) in [("subtree-core", subtree.clone()), ("center", center(t)), ("centroid", centroid(t))] {
                match report {
                    Ok(_) => {}
                    Err(Error::MiddlePartContract(msg)) if exhaustive => {
                        s.counterexample(&format!("{name} is one vertex or two adjacent"), t, msg)
                    }
                    Err(Error::MiddlePartContract(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            let Ok(bc) = bc_core_from_profile(t, &p.per_vertex_bc) else {
                continue;
            };
            if exhaustive {
                // Independent recomputation, one vertex at a time.
                let recomputed: Vec<u64> = t
                    .vertices()
                    .map(|v| counter.count_bc_subtrees_containing(t, v))
                    .collect::<Result<_>>()?;
                let best = *recomputed.iter().max().unwrap();
                let argmax: Vec<usize> = t.vertices().filter(|&v| recomputed[v] == best).collect();
                if argmax != bc.argmax_set || best != bc.extreme_value {
                    s.counterexample(
                        "BC-subtree-core matches per-vertex recomputation",
                        t,
                        format!("{:?} vs {argmax:?}", bc.argmax_set),
                    );
                }
            }
            if widest_core.as_ref().is_none_or(|(d, _)| bc.max_pairwise_distance > *d) {
                widest_core = Some((bc.max_pairwise_distance, t.clone()));
            }
            if bc.argmax_set.len() == 2 && bc.max_pairwise_distance == 2 && split_core_witness.is_none() {
                split_core_witness = Some(t.clone());
            }
            if concavity_witness.is_none() {
                if let Some(run) = alternate_concavity_failure(t, &p.per_vertex_bc) {
                    concavity_witness = Some((t.clone(), run));
                }
            }
            if let Ok(sub) = &subtree {
                if sub.argmax_set.iter().any(|v| !bc.contains(*v)) {
                    let gap = crate::cores::compare_middle_parts(t, counter)?
                        .distance(crate::cores::CoreMetric::SubtreeCore, crate::cores::CoreMetric::BcSubtreeCore)
                        .unwrap_or(0);
                    if widest_gap.as_ref().is_none_or(|(d, _)| gap > *d) {
                        widest_gap = Some((gap, t.clone()));
                    }
                }
            }
        }
    }
    match &split_core_witness {
        Some(t) => s.detail(format!(
            "two-vertex BC-subtree-core at distance 2 first found at order {}",
            t.order()
        )),
        None => s.check(false, || {
            format!("no two-vertex BC-subtree-core at distance 2 up to order {witness_order}")
        }),
    }
    match &concavity_witness {
        Some((t, run)) => s.detail(format!(
            "alternate-vertex concavity fails first at order {} along {:?}",
            t.order(),
            run
        )),
        None => s.check(false, || {
            format!("no alternate-concavity failure up to order {witness_order}")
        }),
    }
    // Evidence only: neither observation is a pass/fail criterion.
    if let Some((d, t)) = &widest_core {
        s.detail(format!(
            "largest BC-subtree-core spread up to order {witness_order}: {d}, first at order {}",
            t.order()
        ));
        s.details.extend(t.to_edge_list().lines().map(|l| format!("  {l}")));
    }
    match &widest_gap {
        Some((d, t)) => {
            s.detail(format!(
                "largest distance from a subtree-core to a BC-subtree-core not containing it: {d}, first at order {}",
                t.order()
            ));
            s.details.extend(t.to_edge_list().lines().map(|l| format!("  {l}")));
        }
        None => s.detail("subtree-core always inside the BC-subtree-core"),
    }
    Ok(s.finish())
}

/// The order-9 tree whose BC-subtree-core is two vertices at distance 2
/// and whose subtree-core is the vertex between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCoreWitness {
    pub tree: Tree,
    pub bc_profile: Vec<u64>,
    pub subtree_profile: Vec<u64>,
    pub bc_core: Vec<usize>,
    pub subtree_core: Vec<usize>,
}

/// The order-11 tree along which alternate-vertex concavity fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcavityWitness {
    pub tree: Tree,
    pub bc_profile: Vec<u64>,
    pub run: [usize; 5],
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

pub const SPLIT_CORE_BC_PROFILE: [u64; 9] = [11, 11, 11, 11, 18, 18, 21, 21, 19];
pub const SPLIT_CORE_SUBTREE_PROFILE: [u64; 9] = [17, 17, 17, 17, 32, 32, 35, 35, 36];
pub const CONCAVITY_BC_PROFILE: [u64; 11] = [39, 39, 39, 39, 39, 39, 69, 69, 67, 73, 73];

/// Searches the free trees of order 9 for a tree with the given
/// BC-subtree and subtree profile multisets.
pub fn find_split_core_trees(counter: &SubtreeCounter) -> Result<Vec<SplitCoreWitness>> {
    let bc_target = sorted(SPLIT_CORE_BC_PROFILE.to_vec());
    let sub_target = sorted(SPLIT_CORE_SUBTREE_PROFILE.to_vec());
    let mut found = Vec::new();
    for t in all_free_trees(9)? {
        let p = counter.profile(&t)?;
        if sorted(p.per_vertex_bc.clone()) != bc_target || sorted(p.per_vertex_subtrees.clone()) != sub_target {
            continue;
        }
        let bc_core = bc_core_from_profile(&t, &p.per_vertex_bc)?.argmax_set;
        let subtree_core = subtree_core_from_profile(&t, &p.per_vertex_subtrees)?.argmax_set;
        found.push(SplitCoreWitness {
            tree: t,
            bc_profile: p.per_vertex_bc,
            subtree_profile: p.per_vertex_subtrees,
            bc_core,
            subtree_core,
        });
    }
    Ok(found)
}

pub fn find_concavity_trees(counter: &SubtreeCounter) -> Result<Vec<ConcavityWitness>> {
    let target = sorted(CONCAVITY_BC_PROFILE.to_vec());
    let trees: Vec<Tree> = all_free_trees(11)?.collect();
    let mut found = Vec::new();
    for t in trees {
        let p = counter.profile(&t)?;
        if sorted(p.per_vertex_bc.clone()) != target {
            continue;
        }
        if let Some(run) = alternate_concavity_failure(&t, &p.per_vertex_bc) {
            found.push(ConcavityWitness {
                tree: t,
                bc_profile: p.per_vertex_bc,
                run,
            });
        }
    }
    Ok(found)
}

/// Checks the structural claims about the order-9 split-core tree.
pub fn split_core_claims_hold(w: &SplitCoreWitness) -> bool {
    let t = &w.tree;
    let [x, y] = w.bc_core[..] else {
        return false;
    };
    let [z] = w.subtree_core[..] else {
        return false;
    };
    w.bc_profile[x] == 21
        && w.subtree_profile[z] == 36
        && t.distance(x, y).ok() == Some(2)
        && t.neighbors(z).contains(&x)
        && t.neighbors(z).contains(&y)
}

fn figures(options: &VerifyOptions) -> Result<SuiteReport> {
    let counter = &options.counter;
    let mut s = SuiteBuilder::new(Suite::Figures);

    let split = find_split_core_trees(counter)?;
    match split.iter().find(|w| split_core_claims_hold(w)) {
        Some(w) => {
            s.detail(format!(
                "order 9: BC-subtree-core {:?} (value 21, distance 2), subtree-core {:?} (value 36) adjacent to both",
                w.bc_core, w.subtree_core
            ));
            s.detail(format!("order 9 BC profile {:?}", w.bc_profile));
            s.detail(format!("order 9 subtree profile {:?}", w.subtree_profile));
            for line in w.tree.to_edge_list().lines() {
                s.detail(format!("  {line}"));
            }
        }
        None => s.check(false, || {
            format!(
                "no order-9 tree reproduces the split-core profile ({} profile matches)",
                split.len()
            )
        }),
    }

    let concave = find_concavity_trees(counter)?;
    match concave.first() {
        Some(w) => {
            let [a, _, c, _, e] = w.run;
            s.detail(format!(
                "order 11: path {:?} has bc(c) = {} < bc(a) = {} (bc(e) = {})",
                w.run, w.bc_profile[c], w.bc_profile[a], w.bc_profile[e]
            ));
            s.detail(format!("order 11 BC profile {:?}", w.bc_profile));
            for line in w.tree.to_edge_list().lines() {
                s.detail(format!("  {line}"));
            }
        }
        None => s.check(false, || {
            "no order-11 tree reproduces the alternate-concavity profile".to_string()
        }),
    }
    Ok(s.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let options = VerifyOptions {
            max_order: 7,
            ..VerifyOptions::default()
        };
        let report = run(&[Suite::Formulas, Suite::Extremal, Suite::Construction], &options).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.totals, Totals { passed: 3, failed: 0 });
    }

    #[test]
    fn order_above_cap_is_refused() {
        let options = VerifyOptions {
            max_order: 13,
            ..VerifyOptions::default()
        };
        assert!(matches!(run(&Suite::ALL, &options), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn concavity_failure_on_paths() {
        let bc = vec![2, 3, 4, 3, 2];
        assert_eq!(alternate_concavity_failure(&Tree::path(5), &bc), None);
        let bc = vec![5, 3, 4, 3, 2];
        assert_eq!(alternate_concavity_failure(&Tree::path(5), &bc), Some([0, 1, 2, 3, 4]));
    }
}
