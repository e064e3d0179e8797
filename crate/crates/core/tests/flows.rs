mod common;

use common::*;
use frostman::dyadic::{Rat, Word};
use frostman::flows::*;
use proptest::prelude::*;

fn tree_strategy() -> impl Strategy<Value = CapacityTree> {
    (0usize..=6, any::<u64>()).prop_map(|(depth, seed)| random_caps(&mut rng(seed), depth))
}

fn flow_strategy(depth: usize) -> impl Strategy<Value = TreeFlow> {
    any::<u64>().prop_map(move |seed| random_flow(&mut rng(seed), depth))
}

#[test]
fn dp_matches_augmenting_paths() {
    let mut r = rng(11);
    for i in 0..60 {
        let cap = random_caps(&mut r, i % 9);
        assert_eq!(truncated_max_flow(&cap).0, edmonds_karp(&cap), "{cap:?}");
    }
}

#[test]
fn dp_matches_exhaustive_cuts() {
    let mut r = rng(12);
    for i in 0..60 {
        let depth = i % 5;
        let cap = random_caps(&mut r, depth);
        assert_eq!(truncated_max_flow(&cap).0, min_cut_exhaustive(depth, |w| cap.get(w)));
    }
}

#[test]
fn cut_enumeration_counts() {
    let counts: Vec<usize> = (0..=4).map(|d| all_cuts(d).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 26, 677]);
}

#[test]
fn path_example_converges_to_the_infimum() {
    let q = |n: usize| Rat::one() + Rat::dyadic(n as u64);
    for d in [1, 4, 10, 20] {
        let cap = CapacityTree::new(d, (0..=d).map(|n| (Word::repeat(true, n), q(n)))).unwrap();
        let a = max_flow_iterate(&cap, d + 1);
        assert_eq!(a[&Word::root()], q(d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_are_valid_maximal_flows(cap in tree_strategy()) {
        for s in [Splitter::LeftGreedy, Splitter::Proportional] {
            let (v, g) = truncated_max_flow_with(&cap, s);
            prop_assert!(is_flow(&g));
            prop_assert_eq!(g.exceeds(&cap), None);
            prop_assert_eq!(g.value(), v);
        }
    }

    #[test]
    fn iteration_decreases_to_the_fixpoint(cap in tree_strategy()) {
        let get = |l: &Labelling, w: &Word| l.get(w).cloned().unwrap_or_else(Rat::zero);
        let mut prev = max_flow_iterate(&cap, 0);
        prop_assert_eq!(&prev, cap.entries());
        for i in 1..=cap.depth() + 1 {
            let next = max_flow_iterate(&cap, i);
            for w in Word::all_up_to_depth(cap.depth()) {
                prop_assert!(get(&next, &w) <= get(&prev, &w));
            }
            prev = next;
        }
        prop_assert_eq!(prev, bottleneck(&cap));
    }

    #[test]
    fn search_agrees_with_the_maximum(cap in tree_strategy(), k in 0u64..5) {
        let (v, _) = truncated_max_flow(&cap);
        match nonzero_flow_search(&cap, k, Splitter::LeftGreedy) {
            FlowSearch::Found(g) => {
                prop_assert!(v >= Rat::dyadic(k));
                prop_assert_eq!(g.value(), Rat::dyadic(k));
                prop_assert!(is_flow(&g));
                prop_assert_eq!(g.exceeds(&cap), None);
            }
            FlowSearch::Refuted(b) => {
                prop_assert!(b < Rat::dyadic(k));
                prop_assert_eq!(b, v);
            }
        }
    }

    #[test]
    fn concentrated_flows(f in flow_strategy(8)) {
        let g = concentrate_flow(&f).unwrap();
        prop_assert!(is_flow(&g));
        prop_assert_eq!(g.value(), Rat::new(1, 2));
        prop_assert_eq!(g.scaled_exceeds(&f.value(), &f), None);
        prop_assert_eq!(concentration_violation(&g), None);
    }
}
