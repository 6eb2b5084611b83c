mod common;

use proptest::prelude::*;
use slcs::oracle::{boundary_minus_pointwise, boundary_plus_pointwise, closure_pointwise, interior_pointwise};
use slcs::{PointId, PointSet, SpaceGraph};

fn arb_space_and_sets(max_n: usize) -> impl Strategy<Value = (SpaceGraph, PointSet, PointSet)> {
    (0..=max_n).prop_flat_map(|n| {
        let edges = if n == 0 {
            Just(vec![]).boxed()
        } else {
            prop::collection::vec((0..n, 0..n), 0..(3 * n)).boxed()
        };
        let bits = prop::collection::vec(any::<bool>(), n);
        (edges, bits.clone(), bits).prop_map(move |(e, a, b)| {
            let set = |bits: Vec<bool>| PointSet::from_indices(n, (0..n).filter(|&i| bits[i])).unwrap();
            (SpaceGraph::from_edges(n, e).unwrap(), set(a), set(b))
        })
    })
}

proptest! {
    #[test]
    fn closure_axioms((g, a, b) in arb_space_and_sets(40)) {
        let c = |s: &PointSet| g.closure(s).unwrap();
        prop_assert!(c(&g.empty_set()).is_empty());
        prop_assert!(a.is_subset(&c(&a)));
        prop_assert_eq!(c(&a.union(&b)), c(&a).union(&c(&b)));
    }

    #[test]
    fn monotone((g, a, b) in arb_space_and_sets(40)) {
        let small = a.intersection(&b);
        prop_assert!(g.closure(&small).unwrap().is_subset(&g.closure(&a).unwrap()));
        prop_assert!(g.interior(&small).unwrap().is_subset(&g.interior(&a).unwrap()));
    }

    #[test]
    fn open_iff_complement_closed((g, a, _b) in arb_space_and_sets(30)) {
        prop_assert_eq!(g.is_open(&a).unwrap(), g.is_closed(&a.complement()).unwrap());
    }

    #[test]
    fn boundary_equations((g, a, _b) in arb_space_and_sets(50)) {
        let na = a.complement();
        let bd = g.boundary(&a).unwrap();
        let plus = g.boundary_plus(&a).unwrap();
        let minus = g.boundary_minus(&a).unwrap();
        prop_assert_eq!(&bd, &plus.union(&minus));
        prop_assert!(plus.is_disjoint(&minus));
        prop_assert_eq!(&bd, &g.boundary(&na).unwrap());
        prop_assert_eq!(&plus, &g.boundary_minus(&na).unwrap());
        prop_assert_eq!(&plus, &bd.intersection(&na));
        prop_assert_eq!(&minus, &bd.intersection(&a));
        prop_assert_eq!(&bd, &g.closure(&a).unwrap().intersection(&g.closure(&na).unwrap()));
    }

    #[test]
    fn set_builder_forms((g, a, _b) in arb_space_and_sets(50)) {
        prop_assert_eq!(g.closure(&a).unwrap(), closure_pointwise(&g, &a));
        prop_assert_eq!(g.interior(&a).unwrap(), interior_pointwise(&g, &a));
        prop_assert_eq!(g.boundary_minus(&a).unwrap(), boundary_minus_pointwise(&g, &a));
        prop_assert_eq!(g.boundary_plus(&a).unwrap(), boundary_plus_pointwise(&g, &a));
    }

    #[test]
    fn closure_is_union_of_point_closures((g, a, _b) in arb_space_and_sets(40)) {
        let mut union = g.empty_set();
        for x in &a {
            let mut single = g.empty_set();
            single.insert(x);
            union.union_with(&g.closure(&single).unwrap());
        }
        prop_assert_eq!(g.closure(&a).unwrap(), union);
    }

    #[test]
    fn minimal_neighbourhood_is_least((g, a, _b) in arb_space_and_sets(12)) {
        // A is a neighbourhood of x iff x ∈ I(A); N_x is one and sits inside A
        for i in 0..g.len() {
            let x = PointId::from(i);
            let nx = g.minimal_neighbourhood(x).unwrap();
            prop_assert!(g.interior(&nx).unwrap().contains(x));
            if g.interior(&a).unwrap().contains(x) {
                prop_assert!(nx.is_subset(&a));
            }
        }
    }
}

fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u32..1 << n).map(move |m| PointSet::from_indices(n, (0..n).filter(|i| m & (1 << i) != 0)).unwrap())
}

#[test]
fn open_sets_closed_under_intersection_and_union() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = 5;
        let g = SpaceGraph::from_edges(n, common::random_edges(&mut rng, n)).unwrap();
        let open: Vec<PointSet> = all_subsets(n).filter(|a| g.is_open(a).unwrap()).collect();
        for a in &open {
            for b in &open {
                assert!(g.is_open(&a.intersection(b)).unwrap());
                assert!(g.is_open(&a.union(b)).unwrap());
            }
        }
        let everything = open.iter().fold(g.empty_set(), |acc, s| acc.union(s));
        assert!(g.is_open(&everything).unwrap());
    }
}

#[test]
fn idempotency_exhaustive_small() {
    // every relation on 3 points
    for mask in 0u32..1 << 9 {
        let edges = (0..9).filter(|b| mask & (1 << b) != 0).map(|b| (b / 3, b % 3));
        let g = SpaceGraph::from_edges(3, edges).unwrap();
        let brute = all_subsets(3).all(|a| {
            let c = g.closure(&a).unwrap();
            g.closure(&c).unwrap() == c
        });
        assert_eq!(g.is_idempotent(), brute, "relation mask {mask:#b}");
    }
}
