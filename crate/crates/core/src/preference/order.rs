use std::fmt;

use super::alt::{AltSet, Alternative, MAX_ALTERNATIVES};
use crate::error::{Error, Result};

/// A strict partial order over `m` alternatives.
///
/// Row `a` holds the set of alternatives that `a` dominates. The stored
/// relation is always transitively closed and irreflexive; rows at or beyond
/// `m` are zero so that equality and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialOrder {
    m: u8,
    rows: [u32; MAX_ALTERNATIVES],
}

/// How a preference is shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallotKind {
    Linear,
    Approval,
    General,
}

impl PartialOrder {
    /// The empty relation on `m` alternatives.
    pub fn empty(m: usize) -> Result<PartialOrder> {
        if m == 0 {
            return Err(Error::Config(
                "a universe needs at least one alternative".into(),
            ));
        }
        if m > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m,
                max: MAX_ALTERNATIVES,
            });
        }
        Ok(PartialOrder {
            m: m as u8,
            rows: [0; MAX_ALTERNATIVES],
        })
    }

    /// Builds the transitive closure of `edges`, where `(x, y)` means `x ≻ y`.
    pub fn from_edges<I>(m: usize, edges: I) -> Result<PartialOrder>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut po = PartialOrder::empty(m)?;
        for (x, y) in edges {
            for index in [x, y] {
                if index >= m {
                    return Err(Error::Index { index, m });
                }
            }
            po.rows[x] |= 1 << y;
        }
        po.close()?;
        Ok(po)
    }

    /// Wraps already-closed rows without re-closing them.
    pub(crate) fn from_closed_rows(m: usize, closed: &[u32]) -> PartialOrder {
        let mut rows = [0; MAX_ALTERNATIVES];
        rows[..m].copy_from_slice(&closed[..m]);
        PartialOrder { m: m as u8, rows }
    }

    // Warshall over bit rows.
    fn close(&mut self) -> Result<()> {
        let m = self.m();
        for k in 0..m {
            let row_k = self.rows[k];
            for i in 0..m {
                if self.rows[i] & (1 << k) != 0 {
                    self.rows[i] |= row_k;
                }
            }
        }
        match (0..m).find(|&a| self.rows[a] & (1 << a) != 0) {
            Some(alternative) => Err(Error::Cycle { alternative }),
            None => Ok(()),
        }
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn dominates(&self, a: Alternative, b: Alternative) -> bool {
        self.rows[a.index()] & (1 << b.0) != 0
    }

    /// Alternatives dominated by `a`.
    pub fn below(&self, a: Alternative) -> AltSet {
        AltSet(self.rows[a.index()])
    }

    /// Alternatives dominating `a`.
    pub fn above(&self, a: Alternative) -> AltSet {
        (0..self.m())
            .filter(|&x| self.rows[x] & (1 << a.0) != 0)
            .map(|x| Alternative(x as u8))
            .collect()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.m()]
    }

    pub fn alternatives(&self) -> AltSet {
        AltSet::full(self.m())
    }

    /// Alternatives not dominated by any other alternative.
    pub fn top(&self) -> AltSet {
        let dominated = self.rows().iter().fold(0, |acc, row| acc | row);
        AltSet(dominated).complement(self.m())
    }

    /// Alternatives that dominate no other alternative.
    pub fn bottom(&self) -> AltSet {
        (0..self.m())
            .filter(|&a| self.rows[a] == 0)
            .map(|a| Alternative(a as u8))
            .collect()
    }

    pub fn non_top(&self) -> AltSet {
        self.top().complement(self.m())
    }

    pub fn non_bottom(&self) -> AltSet {
        self.bottom().complement(self.m())
    }

    /// Number of alternatives `a` dominates.
    pub fn dominance_count(&self, a: Alternative) -> usize {
        self.rows[a.index()].count_ones() as usize
    }

    /// Number of ordered pairs in the relation.
    pub fn pair_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    /// All pairs `(x, y)` with `x ≻ y`, row-major.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (x, &row) in self.rows().iter().enumerate() {
            for y in AltSet(row).iter() {
                edges.push((x, y.index()));
            }
        }
        edges
    }

    /// Covering pairs only (the Hasse diagram), row-major.
    pub fn reduction(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(x, y)| {
                AltSet(self.rows[x])
                    .iter()
                    .all(|z| self.rows[z.index()] & (1 << y) == 0)
            })
            .collect()
    }

    /// `σ(≻) = {(σ(a), σ(b)) | a ≻ b}`.
    pub fn relabel(&self, sigma: &Permutation) -> PartialOrder {
        debug_assert_eq!(sigma.len(), self.m());
        let mut rows = [0; MAX_ALTERNATIVES];
        for (a, &row) in self.rows().iter().enumerate() {
            rows[sigma.apply_index(a)] = sigma.apply_set(AltSet(row)).0;
        }
        PartialOrder { m: self.m, rows }
    }

    /// Every pair of distinct alternatives is comparable.
    pub fn is_linear(&self) -> bool {
        let m = self.m();
        (0..m).all(|a| {
            let comparable = self.rows[a] | self.above(Alternative(a as u8)).0;
            comparable.count_ones() as usize == m - 1
        })
    }

    /// Top and bottom partition the alternatives.
    pub fn is_approval_ballot(&self) -> bool {
        let (top, bottom) = (self.top(), self.bottom());
        top.is_disjoint(bottom) && top.union(bottom) == self.alternatives()
    }

    pub fn ballot_kind(&self) -> BallotKind {
        if self.is_linear() {
            BallotKind::Linear
        } else if self.is_approval_ballot() {
            BallotKind::Approval
        } else {
            BallotKind::General
        }
    }

    /// Key for the canonical order: pairs `(x, y)`, `x ≠ y`, row-major, with the
    /// first pair as the most significant bit. Only meaningful for `m <= 8`.
    pub fn canonical_key(&self) -> u64 {
        let m = self.m();
        let mut key = 0u64;
        for x in 0..m {
            for y in 0..m {
                if x != y {
                    key = (key << 1) | u64::from(self.rows[x] & (1 << y) != 0);
                }
            }
        }
        key
    }

    /// Checks irreflexivity, antisymmetry and transitivity of the stored rows.
    pub fn is_valid(&self) -> bool {
        let m = self.m();
        (0..m).all(|a| {
            let row = self.rows[a];
            row & (1 << a) == 0
                && row.checked_shr(m as u32).unwrap_or(0) == 0
                && AltSet(row).iter().all(|b| {
                    let row_b = self.rows[b.index()];
                    row_b & (1 << a) == 0 && row_b & !row == 0
                })
        }) && self.rows[m..].iter().all(|&r| r == 0)
    }
}

/// Ballot with every approved alternative above every unapproved one.
pub fn approval_ballot(approved: AltSet, m: usize) -> Result<PartialOrder> {
    if approved.is_empty() || approved == AltSet::full(m) || !approved.is_subset(AltSet::full(m)) {
        return Err(Error::DegenerateBallot);
    }
    let rest = approved.complement(m);
    let mut po = PartialOrder::empty(m)?;
    for a in approved.iter() {
        po.rows[a.index()] = rest.0;
    }
    Ok(po)
}

impl fmt::Debug for PartialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialOrder(m={}; ", self.m)?;
        let edges = self.reduction();
        for (i, (x, y)) in edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}>{y}")?;
        }
        write!(f, ")")
    }
}

/// A bijection on alternative indices; `σ(i) = map[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<u8>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Permutation> {
        let n = map.len();
        let mut seen = AltSet::EMPTY;
        for &i in &map {
            if i >= n || i >= MAX_ALTERNATIVES || seen.contains(Alternative(i as u8)) {
                return Err(Error::Permutation(n));
            }
            seen.insert(Alternative(i as u8));
        }
        Ok(Permutation {
            map: map.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn identity(m: usize) -> Permutation {
        Permutation {
            map: (0..m as u8).collect(),
        }
    }

    /// Swaps `a` and `b`, fixing everything else.
    pub fn transposition(m: usize, a: Alternative, b: Alternative) -> Permutation {
        let mut p = Permutation::identity(m);
        p.map.swap(a.index(), b.index());
        p
    }

    /// All `m!` permutations in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..m as u8)
            .permutations(m)
            .map(|map| Permutation { map })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.map
    }

    pub fn apply(&self, a: Alternative) -> Alternative {
        Alternative(self.map[a.index()])
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    /// `σ(S) = {σ(x) | x ∈ S}`.
    pub fn apply_set(&self, set: AltSet) -> AltSet {
        set.iter().map(|a| self.apply(a)).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0u8; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u8;
        }
        Permutation { map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alt(i: u8) -> Alternative {
        Alternative(i)
    }

    #[test]
    fn closure_is_transitive() {
        let po = PartialOrder::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(po.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(po.is_valid());
    }

    #[test]
    fn empty_edges_give_empty_relation() {
        let po = PartialOrder::from_edges(3, []).unwrap();
        assert_eq!(po.pair_count(), 0);
        assert_eq!(po, PartialOrder::empty(3).unwrap());
    }

    #[test]
    fn two_cycle_is_rejected() {
        assert!(matches!(
            PartialOrder::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::Cycle { .. })
        ));
        assert!(matches!(
            PartialOrder::from_edges(3, [(0, 0)]),
            Err(Error::Cycle { alternative: 0 })
        ));
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        assert_eq!(
            PartialOrder::from_edges(3, [(0, 3)]),
            Err(Error::Index { index: 3, m: 3 })
        );
    }

    #[test]
    fn top_and_bottom_of_small_orders() {
        let empty = PartialOrder::empty(3).unwrap();
        assert_eq!(empty.top(), AltSet::full(3));
        assert_eq!(empty.bottom(), AltSet::full(3));
        let linear = PartialOrder::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(linear.top(), AltSet::singleton(alt(0)));
        assert_eq!(linear.bottom(), AltSet::singleton(alt(2)));
        assert_eq!(linear.dominance_count(alt(1)), 1);
        assert_eq!(empty.dominance_count(alt(1)), 0);
    }

    #[test]
    fn mobile_app_example() {
        // Instagram, Facebook, TikTok, Uber, Gmail, Yahoo
        let po = PartialOrder::from_edges(6, [(0, 1), (1, 2), (4, 5)]).unwrap();
        assert_eq!(po.top(), AltSet::from_indices([0, 3, 4]));
        assert_eq!(po.bottom(), AltSet::from_indices([2, 3, 5]));
        assert_eq!(
            po.top().intersection(po.bottom()),
            AltSet::from_indices([3])
        );
        assert_eq!(po.ballot_kind(), BallotKind::General);
    }

    #[test]
    fn relabel_by_transposition_flips_pair() {
        let po = PartialOrder::from_edges(3, [(0, 1)]).unwrap();
        let swapped = po.relabel(&Permutation::transposition(3, alt(0), alt(1)));
        assert!(swapped.dominates(alt(1), alt(0)));
        assert_eq!(swapped.pair_count(), 1);
        assert_eq!(po.relabel(&Permutation::identity(3)), po);
    }

    #[test]
    fn ballot_kinds() {
        let linear = PartialOrder::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(linear.ballot_kind(), BallotKind::Linear);
        let approval = PartialOrder::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        assert_eq!(approval.ballot_kind(), BallotKind::Approval);
        // with two alternatives a linear order also meets the approval condition
        let two = PartialOrder::from_edges(2, [(0, 1)]).unwrap();
        assert!(two.is_approval_ballot());
        assert_eq!(two.ballot_kind(), BallotKind::Linear);
    }

    #[test]
    fn approval_ballot_construction() {
        let po = approval_ballot(AltSet::from_indices([0, 1]), 3).unwrap();
        assert_eq!(po.edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(po.top(), AltSet::from_indices([0, 1]));
        assert_eq!(po.bottom(), AltSet::from_indices([2]));
        assert_eq!(
            approval_ballot(AltSet::full(3), 3),
            Err(Error::DegenerateBallot)
        );
        assert_eq!(
            approval_ballot(AltSet::EMPTY, 3),
            Err(Error::DegenerateBallot)
        );
    }

    #[test]
    fn every_proper_subset_gives_an_approval_ballot() {
        let mut count = 0;
        for bits in 1..(1u32 << 4) - 1 {
            let po = approval_ballot(AltSet(bits), 4).unwrap();
            assert!(po.is_approval_ballot());
            assert_eq!(po.top(), AltSet(bits));
            count += 1;
        }
        assert_eq!(count, 14);
    }

    #[test]
    fn reduction_drops_implied_pairs() {
        let po = PartialOrder::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(po.reduction(), vec![(0, 1), (1, 2)]);
        let rebuilt = PartialOrder::from_edges(3, po.reduction()).unwrap();
        assert_eq!(rebuilt, po);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert_eq!(Permutation::new(vec![0, 0, 2]), Err(Error::Permutation(3)));
        assert_eq!(Permutation::new(vec![0, 3, 1]), Err(Error::Permutation(3)));
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let q = p.inverse();
        for i in 0..3 {
            assert_eq!(q.apply_index(p.apply_index(i)), i);
        }
        assert_eq!(Permutation::all(3).len(), 6);
    }
}
