#![allow(dead_code)]

use std::collections::BTreeSet;

use povote::io::parse_rule_spec;
use povote::preference::{PartialOrder, Profile, Universe};
use povote::rules::VotingRule;

pub fn order(m: usize, edges: &[(usize, usize)]) -> PartialOrder {
    PartialOrder::from_edges(m, edges.iter().copied()).unwrap()
}

/// Linear order ranking `ranking[0]` first.
pub fn linear(ranking: &[usize]) -> PartialOrder {
    order(
        ranking.len(),
        &ranking.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>(),
    )
}

pub fn rule(spec: &str, m: usize) -> Box<dyn VotingRule> {
    parse_rule_spec(spec, &Universe::standard(m)).unwrap()
}

/// Every rule spec that is total on all partial orders at m = 3.
pub const RULES_M3: [&str; 15] = [
    "uniform-plurality",
    "uniform-anti-plurality",
    "dominance-plurality",
    "borda",
    "size-approval:3,2,1",
    "anti-size:3,2,1",
    "full-set",
    "two-step-top",
    "two-step-bottom",
    "runner-up-plurality",
    "runner-up-anti-plurality",
    "double:a-top",
    "double:a-bottom",
    "voter1-top",
    "voter1-bottom",
];

/// Strict partial orders on `m` alternatives by brute force: every subset of
/// the off-diagonal pairs that is transitive (irreflexive by construction,
/// hence asymmetric). Each relation is returned as its sorted edge list.
pub fn brute_force_orders(m: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|x| (0..m).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; m]; m];
        for (bit, &(x, y)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel[x][y] = true;
            }
        }
        let transitive =
            (0..m).all(|x| (0..m).all(|y| !rel[x][y] || (0..m).all(|z| !rel[y][z] || rel[x][z])));
        if transitive {
            let edges = pairs.iter().copied().filter(|&(x, y)| rel[x][y]).collect();
            out.insert(edges);
        }
    }
    out
}

/// All profiles of 1..=max_voters voters over `orders`, ids from 1.
pub fn profiles(orders: &[PartialOrder], max_voters: usize) -> Vec<Profile> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<PartialOrder>> = vec![vec![]];
    for _ in 0..max_voters {
        let mut next = Vec::new();
        for prefix in &layer {
            for o in orders {
                let mut p = prefix.clone();
                p.push(*o);
                next.push(p);
            }
        }
        for p in &next {
            out.push(Profile::numbered(1, p.iter().copied()).unwrap());
        }
        layer = next;
    }
    out
}

/// Profiles of linear ballots over `m` alternatives with 1..=max_voters
/// voters, each kept alongside the rankings that built it.
pub fn linear_profiles(m: usize, max_voters: usize) -> Vec<(Vec<Vec<usize>>, Profile)> {
    use itertools::Itertools;
    let rankings: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    (1..=max_voters)
        .flat_map(|n| std::iter::repeat_n(rankings.clone(), n).multi_cartesian_product())
        .map(|ballots| {
            let profile = Profile::numbered(1, ballots.iter().map(|r| linear(r))).unwrap();
            (ballots, profile)
        })
        .collect()
}

/// Approval ballots read off raw edge lists: every alternative is either
/// undominated or dominates nothing, and none is isolated. Each comes with its
/// approved (undominated) alternatives.
pub fn approval_ballots(m: usize) -> Vec<(Vec<usize>, PartialOrder)> {
    brute_force_orders(m)
        .into_iter()
        .filter_map(|edges| {
            let beats = |a: usize| edges.iter().any(|&(x, _)| x == a);
            let beaten = |a: usize| edges.iter().any(|&(_, y)| y == a);
            let split = (0..m).all(|a| beats(a) != beaten(a));
            split.then(|| ((0..m).filter(|&a| !beaten(a)).collect(), order(m, &edges)))
        })
        .collect()
}

/// Approval profiles with 1..=max_voters voters, each kept alongside the
/// approved sets that built it.
pub fn approval_profiles(m: usize, max_voters: usize) -> Vec<(Vec<Vec<usize>>, Profile)> {
    use itertools::Itertools;
    let ballots = approval_ballots(m);
    (1..=max_voters)
        .flat_map(|n| std::iter::repeat_n(ballots.clone(), n).multi_cartesian_product())
        .map(|chosen| {
            let sets = chosen.iter().map(|(s, _)| s.clone()).collect();
            let profile = Profile::numbered(1, chosen.iter().map(|(_, o)| *o)).unwrap();
            (sets, profile)
        })
        .collect()
}

/// Indices whose count is extreme (max when `most`, min otherwise).
pub fn extreme(counts: &[i64], most: bool) -> Vec<usize> {
    let target = if most {
        counts.iter().max()
    } else {
        counts.iter().min()
    }
    .copied()
    .unwrap();
    (0..counts.len()).filter(|&i| counts[i] == target).collect()
}

/// Classical plurality on rankings: most first positions.
pub fn classical_plurality(m: usize, rankings: &[Vec<usize>]) -> Vec<usize> {
    let mut firsts = vec![0i64; m];
    for r in rankings {
        firsts[r[0]] += 1;
    }
    extreme(&firsts, true)
}

/// Classical anti-plurality on rankings: fewest last positions.
pub fn classical_anti_plurality(m: usize, rankings: &[Vec<usize>]) -> Vec<usize> {
    let mut lasts = vec![0i64; m];
    for r in rankings {
        lasts[r[m - 1]] += 1;
    }
    extreme(&lasts, false)
}

/// Approval voting on approved sets: most approvals.
pub fn approval_winners(m: usize, sets: &[Vec<usize>]) -> Vec<usize> {
    let mut counts = vec![0i64; m];
    for s in sets {
        for &a in s {
            counts[a] += 1;
        }
    }
    extreme(&counts, true)
}

pub fn indices(set: povote::preference::AltSet) -> Vec<usize> {
    set.iter().map(|a| a.index()).collect()
}

/// A thousand enumerated profiles for serialization round trips: every
/// profile of at most two voters at m = 3 (380), every single voter at m = 4
/// (219), then two-voter m = 4 profiles with spread-out ids over custom labels.
pub fn round_trip_corpus() -> Vec<(Universe, Profile)> {
    use povote::preference::{enumerate_partial_orders, VoterId};
    let m3 = Universe::standard(3);
    let orders3 = enumerate_partial_orders(3).unwrap();
    let mut out: Vec<(Universe, Profile)> = profiles(&orders3, 2)
        .into_iter()
        .map(|p| (m3.clone(), p))
        .collect();
    let orders4 = enumerate_partial_orders(4).unwrap();
    let m4 = Universe::new(
        ["north", "east", "south", "west"]
            .map(String::from)
            .to_vec(),
    )
    .unwrap();
    out.extend(profiles(&orders4, 1).into_iter().map(|p| (m4.clone(), p)));
    'outer: for (i, x) in orders4.iter().enumerate() {
        for (j, y) in orders4.iter().enumerate().skip(i % 7) {
            if out.len() == 1000 {
                break 'outer;
            }
            let ids = [(3 * i + 7) as u32, (j + 1) as u32];
            if ids[0] == ids[1] {
                continue;
            }
            let p = Profile::new(vec![(VoterId(ids[0]), *x), (VoterId(ids[1]), *y)]).unwrap();
            out.push((m4.clone(), p));
        }
    }
    assert_eq!(out.len(), 1000);
    out
}

/// Malformed ballot files and the position each diagnostic must carry, as
/// (name, text, line, column).
pub const BAD_BALLOTS: [(&str, &str, usize, usize); 4] = [
    (
        "cycle",
        "alternatives: a b c\nvoter 1: a > b, b > c, c > a\n",
        2,
        10,
    ),
    (
        "duplicate voter",
        "alternatives: a b c\nvoter 1: a > b\nvoter 1: b > c\n",
        3,
        7,
    ),
    (
        "unknown label",
        "alternatives: a b c\nvoter 1: a > b\nvoter 2: a > z\n",
        3,
        14,
    ),
    (
        "degenerate approval",
        "alternatives: a b c\n\nvoter 4: approve {a, b, c}\n",
        3,
        10,
    ),
];
