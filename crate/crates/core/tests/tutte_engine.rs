mod common;

use common::*;
use matk0::tutte::{tutte_dc_with, tutte_direct_with};
use matk0::{
    tutte_dc, tutte_direct, ElementClass, Execution, Matroid, MemoPolicy, PivotStrategy,
    TuttePolynomial,
};
use proptest::prelude::*;

const STRATEGIES: [PivotStrategy; 4] = [
    PivotStrategy::MinIndex,
    PivotStrategy::MaxIndex,
    PivotStrategy::Seeded(1),
    PivotStrategy::Seeded(0xdead_beef),
];

fn swap(p: &TuttePolynomial) -> TuttePolynomial {
    p.swap_variables()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn engines_match_the_oracle(m in arb_matroid(9)) {
        let oracle = tutte_oracle(&m);
        prop_assert_eq!(&tutte_direct(&m).unwrap(), &oracle);
        for s in STRATEGIES {
            for memo in [MemoPolicy::None, MemoPolicy::Exact] {
                prop_assert_eq!(&tutte_dc(&m, s, memo).unwrap(), &oracle, "{} {:?}", s, memo);
            }
        }
    }

    #[test]
    fn graphic_engines_match_component_formula(g in arb_graph(10)) {
        let m = g.graphic_matroid().unwrap();
        let oracle = tutte_graph(&g);
        prop_assert_eq!(&tutte_direct(&m).unwrap(), &oracle);
        prop_assert_eq!(&tutte_dc(&m, PivotStrategy::MinIndex, MemoPolicy::Exact).unwrap(), &oracle);
    }

    #[test]
    fn multiplicative_on_direct_sums(a in arb_matroid(5), b in arb_matroid(5)) {
        let s = a.direct_sum(&b).unwrap();
        let lhs = tutte_dc(&s, PivotStrategy::MinIndex, MemoPolicy::Exact).unwrap();
        prop_assert_eq!(lhs, tutte_direct(&a).unwrap() * tutte_direct(&b).unwrap());
    }

    #[test]
    fn duality_swaps_variables(m in arb_matroid(9)) {
        prop_assert_eq!(tutte_oracle(&m.dual()), swap(&tutte_oracle(&m)));
        prop_assert_eq!(tutte_direct(&m.dual()).unwrap(), swap(&tutte_direct(&m).unwrap()));
    }

    #[test]
    fn recurrence_and_factorization(m in arb_matroid(8)) {
        let t = tutte_direct(&m).unwrap();
        for e in m.labels() {
            let del = tutte_direct(&m.delete_element(e).unwrap()).unwrap();
            let expected = match m.classify_element(e).unwrap() {
                ElementClass::NonDegenerate => {
                    del + tutte_direct(&m.contract_element(e).unwrap()).unwrap()
                }
                ElementClass::Loop => TuttePolynomial::y() * del,
                ElementClass::Coloop => TuttePolynomial::x() * del,
            };
            prop_assert_eq!(&t, &expected, "element {}", e);
        }
    }

    #[test]
    fn evaluations(m in arb_matroid(9)) {
        let t = tutte_direct(&m).unwrap();
        prop_assert_eq!(t.evaluate_int(2, 2), num_bigint::BigInt::from(1u64 << m.len()));
        prop_assert_eq!(t.evaluate_int(1, 1), num_bigint::BigInt::from(m.basis_count()));
    }

    #[test]
    fn sequential_and_parallel_agree(m in arb_matroid(10)) {
        prop_assert_eq!(
            tutte_direct_with(&m, Execution::Sequential).unwrap(),
            tutte_direct_with(&m, Execution::Parallel).unwrap()
        );
        prop_assert_eq!(
            tutte_dc_with(&m, PivotStrategy::Seeded(3), MemoPolicy::Exact, Execution::Sequential).unwrap(),
            tutte_dc_with(&m, PivotStrategy::Seeded(3), MemoPolicy::Exact, Execution::Parallel).unwrap()
        );
    }
}

#[test]
fn uniform_matroids_match_closed_form() {
    for n in 0..=10u32 {
        for k in 0..=n {
            let m = Matroid::uniform(k as usize, n as usize).unwrap();
            let expected = tutte_uniform(k, n);
            assert_eq!(tutte_direct(&m).unwrap(), expected, "U({k},{n})");
            for s in STRATEGIES {
                assert_eq!(tutte_dc(&m, s, MemoPolicy::Exact).unwrap(), expected);
            }
        }
    }
}

#[test]
fn indecomposable_base_case() {
    for loops in 0..5 {
        for coloops in 0..5 {
            let m = Matroid::uniform(0, loops)
                .unwrap()
                .direct_sum(&Matroid::uniform(coloops, coloops).unwrap())
                .unwrap();
            let mono = TuttePolynomial::monomial(1, coloops as u32, loops as u32);
            assert_eq!(tutte_direct(&m).unwrap(), mono);
            assert_eq!(
                tutte_dc(&m, PivotStrategy::MinIndex, MemoPolicy::None).unwrap(),
                mono
            );
        }
    }
}

#[test]
fn direct_engine_capacity() {
    let m = Matroid::uniform(3, 25).unwrap();
    assert!(matches!(
        tutte_direct(&m),
        Err(matk0::Error::CapacityExceeded { .. })
    ));
    let t = tutte_dc(&m, PivotStrategy::MinIndex, MemoPolicy::Exact).unwrap();
    assert_eq!(t.evaluate_int(1, 1), num_bigint::BigInt::from(2300));
}
