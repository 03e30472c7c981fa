mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use povote::preference::{
    enumerate_partial_orders, enumerate_with, AltSet, Alternative, Limits, PartialOrder,
    Permutation, Profile, VoterId,
};
use povote::Error;

#[test]
fn enumeration_matches_brute_force_oracle() {
    for m in 1..=4 {
        let oracle = common::brute_force_orders(m);
        let listed: Vec<PartialOrder> = enumerate_partial_orders(m).unwrap();
        let as_edges: BTreeSet<Vec<(usize, usize)>> = listed.iter().map(|o| o.edges()).collect();
        assert_eq!(as_edges.len(), listed.len(), "duplicates at m = {m}");
        assert_eq!(as_edges, oracle, "m = {m}");
        assert!(listed.iter().all(|o| o.is_valid()));
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted() {
    let a = enumerate_with(4, &Limits::default()).unwrap();
    let b = enumerate_with(4, &Limits::default()).unwrap();
    assert_eq!(a, b);
    assert!(a
        .windows(2)
        .all(|w| w[0].canonical_key() < w[1].canonical_key()));
}

#[test]
fn relation_examples() {
    // the single-voter examples used throughout: a≻b≻c, and a≻b with c isolated
    let chain = common::linear(&[0, 1, 2]);
    assert_eq!(chain.top(), AltSet::from_indices([0]));
    assert_eq!(chain.bottom(), AltSet::from_indices([2]));
    let loose = common::order(3, &[(0, 1)]);
    assert_eq!(loose.top(), AltSet::from_indices([0, 2]));
    assert_eq!(loose.bottom(), AltSet::from_indices([1, 2]));
    let empty = PartialOrder::empty(3).unwrap();
    assert_eq!(empty.top(), AltSet::full(3));
    assert_eq!(empty.bottom(), AltSet::full(3));
    assert!(matches!(
        PartialOrder::from_edges(3, [(0, 1), (1, 2), (2, 0)]),
        Err(Error::Cycle { .. })
    ));
    assert!(matches!(
        PartialOrder::from_edges(3, [(0, 3)]),
        Err(Error::Index { .. })
    ));
}

fn has_cycle(m: usize, edges: &[(usize, usize)]) -> bool {
    let mut reach = vec![vec![false; m]; m];
    for &(x, y) in edges {
        reach[x][y] = true;
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..m).any(|i| reach[i][i])
}

fn edges_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|m| (Just(m), prop::collection::vec((0..m, 0..m), 0..12)))
}

fn dag_strategy() -> impl Strategy<Value = PartialOrder> {
    (1usize..=6)
        .prop_flat_map(|m| {
            (
                Just(m),
                Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec((0..m, 0..m), 0..10),
            )
        })
        .prop_map(|(m, rank, raw)| {
            // orient every pair along a random ranking, so the result is acyclic
            let edges = raw.into_iter().filter(|(x, y)| x != y).map(|(x, y)| {
                if rank[x] < rank[y] {
                    (x, y)
                } else {
                    (y, x)
                }
            });
            PartialOrder::from_edges(m, edges).unwrap()
        })
}

proptest! {
    #[test]
    fn closure_agrees_with_cycle_oracle((m, edges) in edges_strategy()) {
        let built = PartialOrder::from_edges(m, edges.iter().copied());
        let cyclic = has_cycle(m, &edges);
        prop_assert_eq!(built.is_err(), cyclic);
        if let Ok(po) = built {
            for (x, y) in edges {
                prop_assert!(po.dominates(Alternative(x as u8), Alternative(y as u8)));
            }
        }
    }

    #[test]
    fn closure_is_idempotent(po in dag_strategy()) {
        prop_assert_eq!(PartialOrder::from_edges(po.m(), po.edges()).unwrap(), po);
        prop_assert_eq!(PartialOrder::from_edges(po.m(), po.reduction()).unwrap(), po);
        prop_assert!(po.is_valid());
    }

    #[test]
    fn top_and_bottom_partition(po in dag_strategy()) {
        let all = AltSet::full(po.m());
        prop_assert!(!po.top().is_empty());
        prop_assert!(!po.bottom().is_empty());
        prop_assert!(po.top().is_disjoint(po.non_top()));
        prop_assert_eq!(po.top().union(po.non_top()), all);
        prop_assert!(po.bottom().is_disjoint(po.non_bottom()));
        prop_assert_eq!(po.bottom().union(po.non_bottom()), all);
        let total: usize = (0..po.m()).map(|a| po.dominance_count(Alternative(a as u8))).sum();
        prop_assert_eq!(total, po.pair_count());
        prop_assert_eq!(po.pair_count(), po.edges().len());
    }

    #[test]
    fn relabeling_moves_top_and_bottom(
        (po, sigma) in dag_strategy().prop_flat_map(|po| {
            let m = po.m();
            (Just(po), Just((0..m).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let sigma = Permutation::new(sigma).unwrap();
        let moved = po.relabel(&sigma);
        prop_assert_eq!(moved.top(), sigma.apply_set(po.top()));
        prop_assert_eq!(moved.bottom(), sigma.apply_set(po.bottom()));
        prop_assert_eq!(moved.relabel(&sigma.inverse()), po);
    }
}

#[test]
fn profile_replication_numbering() {
    // N = {2, 4}, N' = {1, 7, 9}, three copies of the first profile
    let x = common::linear(&[0, 1, 2]);
    let y = common::linear(&[2, 1, 0]);
    let with_ids = |pairs: &[(u32, PartialOrder)]| {
        Profile::new(pairs.iter().map(|&(id, o)| (VoterId(id), o)).collect()).unwrap()
    };
    let first = with_ids(&[(2, x), (4, y)]);
    let second = with_ids(&[(1, x), (7, x), (9, x)]);
    let joined = povote::axioms::replicated(&first, &second, 3).unwrap();
    let ids: Vec<u32> = joined.ids().map(|v| v.0).collect();
    assert_eq!(ids, vec![2, 4, 3, 5, 6, 8, 1, 7, 9]);
    for (id, expected) in [(2, x), (3, x), (6, x), (4, y), (5, y), (8, y)] {
        assert_eq!(joined.preference(VoterId(id)), Some(&expected));
    }
}
