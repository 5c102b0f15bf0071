mod common;

use std::sync::Arc;

use common::*;
use matk0::dc::{indecomposable_covering_with, refine_to_indecomposable};
use matk0::io::{tree_from_json, tree_to_json};
use matk0::samples::{random_partial_tree, rng};
use matk0::{
    common_refinement, covering_from_tree, indecomposable_covering, is_morphism,
    leaf_class_multiset, BranchOrder, DCTree, Execution, Link, Matroid, PivotStrategy,
    TutteCovering,
};
use proptest::prelude::*;

fn strategies() -> Vec<PivotStrategy> {
    let mut s = vec![PivotStrategy::MinIndex, PivotStrategy::MaxIndex];
    s.extend((0..5).map(|i| PivotStrategy::Seeded(1000 + i)));
    s
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = DCTree> {
    (arb_matroid(max_n), any::<u64>())
        .prop_map(|(m, s)| random_partial_tree(&mut rng(s), Arc::new(m), 0.6, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn strategy_invariance(m in arb_matroid(8)) {
        let m = Arc::new(m);
        let reference = leaf_class_multiset(&indecomposable_covering(m.clone(), PivotStrategy::MinIndex)).unwrap();
        for s in strategies() {
            for order in [BranchOrder::DeleteFirst, BranchOrder::ContractFirst] {
                let c = indecomposable_covering_with(m.clone(), s, order, Execution::default());
                prop_assert_eq!(&leaf_class_multiset(&c).unwrap(), &reference);
            }
        }
    }

    #[test]
    fn full_trees_are_valid_and_bounded(m in arb_matroid(8)) {
        let n = m.len();
        let bases = m.basis_count();
        let c = indecomposable_covering(Arc::new(m), PivotStrategy::MaxIndex);
        let t = c.witness();
        prop_assert!(t.is_valid());
        let internal = t.nodes().filter(|(_, node)| !node.is_leaf()).count();
        prop_assert!(internal < 1 << n);
        // every leaf contributes 1 to T(1,1)
        prop_assert_eq!(c.legs().len(), bases);
        let multiset = leaf_class_multiset(&c).unwrap();
        prop_assert_eq!(multiset.values().sum::<usize>(), c.legs().len());
    }

    #[test]
    fn legs_are_morphisms(t in arb_tree(7)) {
        prop_assert!(t.is_valid());
        let c = covering_from_tree(t).unwrap();
        for leg in c.legs() {
            prop_assert!(is_morphism(leg));
            prop_assert!(leg.is_injective());
            for (a, b) in leg.label_pairs() {
                prop_assert_eq!(a, b);
            }
        }
        c.validate().unwrap();
    }

    #[test]
    fn grafting_preserves_validity(t in arb_tree(6), s in any::<u64>()) {
        let leaves = t.leaves();
        let leaf = leaves[(s % leaves.len() as u64) as usize];
        let sub = random_partial_tree(&mut rng(s), t.matroid(leaf).clone(), 0.7, 3);
        let g = t.graft(leaf, &sub).unwrap();
        prop_assert!(g.is_valid());
        prop_assert_eq!(g.len(), t.len() + sub.len() - 1);
    }

    #[test]
    fn tree_json_round_trip(t in arb_tree(6)) {
        let back = tree_from_json(&tree_to_json(&t)).unwrap();
        prop_assert_eq!(back.len(), t.len());
        prop_assert_eq!(covering_from_tree(back).unwrap(), covering_from_tree(t).unwrap());
    }

    #[test]
    fn refinement_factors_exactly(t in arb_tree(7)) {
        let c = covering_from_tree(t).unwrap();
        let r = refine_to_indecomposable(&c).unwrap();
        r.verify(&c).unwrap();
        prop_assert!(r.covering.is_indecomposable());
        for (k, f) in r.factors.iter().enumerate() {
            prop_assert!(is_morphism(&f.map));
            prop_assert_eq!(&c.legs()[f.leg].compose(&f.map).unwrap(), &r.covering.legs()[k]);
        }
    }

    #[test]
    fn common_refinement_of_random_pairs(m in arb_matroid(7), s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = Arc::new(m);
        let a = covering_from_tree(random_partial_tree(&mut rng(s1), m.clone(), 0.5, 3)).unwrap();
        let b = covering_from_tree(random_partial_tree(&mut rng(s2), m.clone(), 0.5, 3)).unwrap();
        let cr = common_refinement(&a, &b).unwrap();
        cr.verify(&a, &b).unwrap();
        prop_assert_eq!(
            leaf_class_multiset(&cr.covering).unwrap(),
            leaf_class_multiset(&cr.other.covering).unwrap()
        );
        for (k, f) in cr.into_a.iter().enumerate() {
            prop_assert!(is_morphism(&f.map));
            prop_assert_eq!(&a.legs()[f.leg].compose(&f.map).unwrap(), &cr.covering.legs()[k]);
        }
        for x in &cr.into_b {
            prop_assert!(is_morphism(&x.map));
            prop_assert_eq!(
                &b.legs()[x.leg].compose(&x.map).unwrap(),
                &cr.other.covering.legs()[x.via].compose(&x.iso).unwrap()
            );
        }
    }
}

#[test]
fn pass_nodes_are_accepted() {
    let m = Arc::new(Matroid::uniform(1, 2).unwrap());
    let mut t = DCTree::trivial(m.clone());
    let p = t
        .push_child_unchecked(DCTree::ROOT, Link::Pass, m.clone())
        .unwrap();
    t.expand_leaf_in_place(p, "b", BranchOrder::ContractFirst)
        .unwrap();
    assert!(t.is_valid());
    let c = TutteCovering::from_tree(t.clone()).unwrap();
    let direct = indecomposable_covering_with(
        m.clone(),
        PivotStrategy::MaxIndex,
        BranchOrder::ContractFirst,
        Execution::default(),
    );
    assert_eq!(c, direct);
    let back = tree_from_json(&tree_to_json(&t)).unwrap();
    assert_eq!(back.len(), t.len());
    assert!(matches!(back.root().children()[0].0, Link::Pass));
}

#[test]
fn invalid_trees_are_reported() {
    let m = Arc::new(Matroid::uniform(1, 2).unwrap());
    let mut t = DCTree::trivial(m.clone());
    // a wrong child matroid under a delete link
    t.push_child_unchecked(DCTree::ROOT, Link::Delete("a".into()), m.clone())
        .unwrap();
    let defects = t.validate().unwrap_err();
    assert!(!defects.is_empty());
    // expanding on a coloop is refused
    let u11 = Arc::new(Matroid::uniform(1, 1).unwrap());
    assert!(DCTree::trivial(u11)
        .expand_leaf(DCTree::ROOT, "a", BranchOrder::DeleteFirst)
        .is_err());
}

#[test]
fn sequential_and_parallel_trees_agree() {
    for m in matroid_corpus(5, 30, 9) {
        let m = Arc::new(m);
        for s in [PivotStrategy::MinIndex, PivotStrategy::Seeded(4)] {
            let a = indecomposable_covering_with(
                m.clone(),
                s,
                BranchOrder::DeleteFirst,
                Execution::Sequential,
            );
            let b = indecomposable_covering_with(
                m.clone(),
                s,
                BranchOrder::DeleteFirst,
                Execution::Parallel,
            );
            assert_eq!(a, b);
            assert_eq!(tree_to_json(a.witness()), tree_to_json(b.witness()));
        }
    }
}
