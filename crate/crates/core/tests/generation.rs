mod common;

use std::collections::{HashMap, HashSet};

use bctree::generate::{all_free_trees, all_free_trees_capped};
use bctree::{canonical_form, CanonicalForm, Error, Tree};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{for_each_labeled_tree, isomorphic, random_relabel, random_tree};

/// Isomorphism-class representatives of all labeled trees, by brute force.
fn prufer_classes(n: usize) -> Vec<Tree> {
    let mut reps: Vec<Tree> = Vec::new();
    for_each_labeled_tree(n, |t| {
        if !reps.iter().any(|r| isomorphic(r, &t)) {
            reps.push(t);
        }
    });
    reps
}

#[test]
fn generator_matches_labeled_enumeration() {
    for n in 1..=8 {
        let reps = prufer_classes(n);
        let generated: Vec<Tree> = all_free_trees(n).unwrap().collect();
        assert_eq!(generated.len(), reps.len(), "order {n}");
        for g in &generated {
            assert_eq!(reps.iter().filter(|r| isomorphic(r, g)).count(), 1);
        }
    }
}

#[test]
fn canonical_form_agrees_with_isomorphism() {
    for n in 4..=6 {
        let mut by_form: HashMap<CanonicalForm, Vec<Tree>> = HashMap::new();
        let mut labeled = 0;
        for_each_labeled_tree(n, |t| {
            labeled += 1;
            by_form.entry(canonical_form(&t)).or_default().push(t);
        });
        assert_eq!(labeled, n.pow(n as u32 - 2));
        assert_eq!(by_form.len(), prufer_classes(n).len());
        let classes: Vec<&Vec<Tree>> = by_form.values().collect();
        for (i, a) in classes.iter().enumerate() {
            assert!(a.iter().all(|t| isomorphic(&a[0], t)));
            for b in &classes[i + 1..] {
                assert!(!isomorphic(&a[0], &b[0]));
            }
        }
    }
}

#[test]
fn labeled_order_four() {
    let mut forms = HashSet::new();
    let mut count = 0;
    for_each_labeled_tree(4, |t| {
        count += 1;
        forms.insert(canonical_form(&t));
    });
    assert_eq!((count, forms.len()), (16, 2));
}

#[test]
fn generated_trees_are_pairwise_distinct() {
    let known = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
    for (i, &count) in known.iter().enumerate() {
        let n = i + 1;
        let forms: HashSet<CanonicalForm> =
            all_free_trees(n).unwrap().map(|t| canonical_form(&t)).collect();
        assert_eq!(forms.len(), count, "order {n}");
    }
}

#[test]
fn generation_is_stable() {
    let a: Vec<String> = all_free_trees(10).unwrap().map(|t| t.to_edge_list()).collect();
    let b: Vec<String> = all_free_trees(10).unwrap().map(|t| t.to_edge_list()).collect();
    assert_eq!(a, b);
    assert!(all_free_trees(10).unwrap().all(|t| t.order() == 10));
}

#[test]
fn caps_are_enforced() {
    assert!(matches!(all_free_trees(13), Err(Error::CapExceeded { order: 13, cap: 12, .. })));
    assert!(matches!(all_free_trees(0), Err(Error::OrderTooSmall { .. })));
    assert_eq!(all_free_trees_capped(5, 5).unwrap().count(), 3);
}

#[test]
fn canonical_form_invariant_under_relabeling() {
    let mut rng = StdRng::seed_from_u64(17);
    for i in 0..200 {
        let t = random_tree(&mut rng, 2 + i % 20);
        let u = random_relabel(&mut rng, &t);
        assert_eq!(canonical_form(&t), canonical_form(&u));
    }
}

proptest! {
    #[test]
    fn canonical_forms_separate_non_isomorphic_trees(
        seq_a in prop::collection::vec(0usize..8, 6),
        seq_b in prop::collection::vec(0usize..8, 6),
    ) {
        let a = common::prufer_decode(&seq_a, 8);
        let b = common::prufer_decode(&seq_b, 8);
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), isomorphic(&a, &b));
    }
}
