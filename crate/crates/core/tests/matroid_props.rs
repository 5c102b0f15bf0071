mod common;

use common::*;
use matk0::bits;
use matk0::iso::{are_isomorphic, automorphism_count};
use matk0::{ElementClass, GroundSet, Matroid};
use proptest::prelude::*;

fn split(n: usize, a: u64, b: u64) -> (u64, u64) {
    let full = bits::full(n);
    let t1 = a & full;
    (t1, b & full & !t1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minors_are_well_defined(m in arb_matroid(7), a in any::<u64>(), b in any::<u64>()) {
        let (t1, t2) = split(m.len(), a, b);
        let l1 = m.ground().labels_of(t1);
        let l2 = m.ground().labels_of(t2);
        let both: Vec<&str> = l1.iter().chain(&l2).copied().collect();

        let dd = m.delete(&l1).unwrap().delete(&l2).unwrap();
        prop_assert_eq!(&dd, &m.delete(&both).unwrap());
        prop_assert_eq!(&dd, &m.delete(&l2).unwrap().delete(&l1).unwrap());

        let cc = m.contract(&l1).unwrap().contract(&l2).unwrap();
        prop_assert_eq!(&cc, &m.contract(&both).unwrap());
        prop_assert_eq!(&cc, &m.contract(&l2).unwrap().contract(&l1).unwrap());

        prop_assert_eq!(
            m.contract(&l2).unwrap().delete(&l1).unwrap(),
            m.delete(&l1).unwrap().contract(&l2).unwrap()
        );
    }

    #[test]
    fn minors_against_rank_oracle(m in arb_matroid(7), a in any::<u64>()) {
        let t = a & bits::full(m.len());
        let labels = m.ground().labels_of(t);
        let r_t = rank_from_bases(m.bases(), t);
        let del = m.delete(&labels).unwrap();
        let con = m.contract(&labels).unwrap();
        // rank of S in M\T is r(S); in M/T it is r(S ∪ T) - r(T)
        for s in 0..1u64 << del.len() {
            let names = del.ground().labels_of(s);
            let in_m = m.ground().mask_of(&names).unwrap();
            prop_assert_eq!(del.rank_mask(s) as u32, rank_from_bases(m.bases(), in_m));
            prop_assert_eq!(
                con.rank_mask(s) as u32,
                rank_from_bases(m.bases(), in_m | t) - r_t
            );
        }
    }

    #[test]
    fn dual_is_an_involution(m in arb_matroid(8)) {
        prop_assert_eq!(&m.dual().dual(), &m);
        prop_assert_eq!(m.dual().rank(), m.len() - m.rank());
        for e in m.labels() {
            prop_assert_eq!(
                m.dual().classify_element(e).unwrap(),
                m.classify_element(e).unwrap().dual()
            );
        }
    }

    #[test]
    fn deletion_and_contraction_are_dual(m in arb_matroid(7), a in any::<u64>()) {
        let labels = m.ground().labels_of(a & bits::full(m.len()));
        prop_assert_eq!(m.delete(&labels).unwrap().dual(), m.dual().contract(&labels).unwrap());
    }

    #[test]
    fn operations_preserve_the_axioms(m in arb_matroid(7), other in arb_matroid(4), a in any::<u64>()) {
        let t = m.ground().labels_of(a & bits::full(m.len()));
        m.validate_axioms().unwrap();
        m.dual().validate_axioms().unwrap();
        m.delete(&t).unwrap().validate_axioms().unwrap();
        m.contract(&t).unwrap().validate_axioms().unwrap();
        if m.len() + other.len() <= 10 {
            m.direct_sum(&other).unwrap().validate_axioms().unwrap();
        }
    }

    #[test]
    fn independence_matches_basis_containment(m in arb_matroid(8)) {
        for s in 0..1u64 << m.len() {
            let oracle = m.bases().iter().any(|b| s & b == s);
            prop_assert_eq!(m.is_independent_mask(s), oracle);
        }
    }

    #[test]
    fn classification_matches_definitions(m in arb_matroid(8)) {
        for i in 0..m.len() {
            let in_all = m.bases().iter().all(|b| b >> i & 1 == 1);
            let in_none = m.bases().iter().all(|b| b >> i & 1 == 0);
            let expected = match (in_none, in_all) {
                (true, _) => ElementClass::Loop,
                (_, true) => ElementClass::Coloop,
                _ => ElementClass::NonDegenerate,
            };
            prop_assert_eq!(m.classify_index(i), expected);
        }
        prop_assert_eq!(m.is_indecomposable(), m.nondegenerate_mask() == 0);
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(a in arb_matroid(6), b in arb_matroid(6), p in any::<u64>()) {
        let found = are_isomorphic(&a, &b);
        prop_assert_eq!(found.is_some(), brute_isomorphic(&a, &b));
        if let Some(map) = found {
            prop_assert!(maps_bases(&a, &b, &map));
        }
        // a relabelled copy of `a` is always isomorphic to it
        let perms = permutations(a.len());
        let perm = &perms[(p % perms.len() as u64) as usize];
        let mut bases: Vec<u64> = a.bases().iter().map(|s| permute_mask(*s, perm)).collect();
        bases.sort_unstable();
        let copy = Matroid::from_basis_masks(GroundSet::canonical(a.len()).unwrap(), bases).unwrap();
        prop_assert!(are_isomorphic(&a, &copy).is_some());
    }

    #[test]
    fn automorphisms_of_small_matroids(m in arb_matroid(6)) {
        let brute = permutations(m.len()).iter().filter(|p| maps_bases(&m, &m, p)).count();
        prop_assert_eq!(automorphism_count(&m).unwrap(), brute.into());
    }
}

#[test]
fn automorphism_law_for_indecomposables() {
    for total in 0..=7 {
        for loops in 0..=total {
            let coloops = total - loops;
            let m = Matroid::uniform(0, loops)
                .unwrap()
                .direct_sum(&Matroid::uniform(coloops, coloops).unwrap())
                .unwrap();
            let class = m.indecomposable_class().unwrap();
            assert_eq!((class.loops, class.coloops), (loops, coloops));
            assert_eq!(
                automorphism_count(&m).unwrap(),
                (factorial(loops) * factorial(coloops)).into()
            );
        }
    }
}

#[test]
fn direct_sum_labels() {
    let u = Matroid::uniform(1, 2).unwrap();
    let s = u.direct_sum(&u).unwrap();
    assert_eq!(s.labels(), ["a.L", "b.L", "a.R", "b.R"]);
    assert_eq!(s.basis_count(), 4);
    let v = Matroid::from_bases(GroundSet::new(["x"]).unwrap(), [vec!["x"]]).unwrap();
    assert_eq!(u.direct_sum(&v).unwrap().labels(), ["a", "b", "x"]);
    assert_eq!(u.direct_sum(&Matroid::empty()).unwrap(), u);
}

#[test]
fn capacity_and_bad_input() {
    assert!(matches!(
        GroundSet::canonical(65),
        Err(matk0::Error::CapacityExceeded { .. })
    ));
    assert!(Matroid::uniform(3, 2).is_err());
    let g = GroundSet::new(["a", "b"]).unwrap();
    assert!(Matroid::from_bases(g.clone(), Vec::<Vec<&str>>::new()).is_err());
    assert!(Matroid::from_independent_sets(g, [vec!["a", "b"]]).is_err());
}
