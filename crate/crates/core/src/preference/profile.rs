use std::collections::BTreeSet;
use std::fmt;

use super::order::{PartialOrder, Permutation};
use crate::error::{Error, Result};

/// A positive voter id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VoterId(pub u32);

impl fmt::Display for VoterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Preferences of a finite electorate over a shared universe, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    m: usize,
    voters: Vec<(VoterId, PartialOrder)>,
}

impl Profile {
    pub fn new(voters: Vec<(VoterId, PartialOrder)>) -> Result<Profile> {
        let m = match voters.first() {
            Some((_, po)) => po.m(),
            None => return Err(Error::EmptyProfile),
        };
        let mut seen = BTreeSet::new();
        for (id, po) in &voters {
            if id.0 == 0 {
                return Err(Error::ZeroVoterId);
            }
            if !seen.insert(*id) {
                return Err(Error::DuplicateVoter(*id));
            }
            if po.m() != m {
                return Err(Error::Arity {
                    expected: m,
                    found: po.m(),
                });
            }
        }
        Ok(Profile { m, voters })
    }

    /// Voters numbered `first_id, first_id + 1, ...` in the given order.
    pub fn numbered(
        first_id: u32,
        orders: impl IntoIterator<Item = PartialOrder>,
    ) -> Result<Profile> {
        Profile::new(
            orders
                .into_iter()
                .enumerate()
                .map(|(i, po)| (VoterId(first_id + i as u32), po))
                .collect(),
        )
    }

    // Callers guarantee the invariants.
    pub(crate) fn from_parts_unchecked(m: usize, voters: Vec<(VoterId, PartialOrder)>) -> Profile {
        debug_assert!(!voters.is_empty());
        Profile { m, voters }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.voters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voters.is_empty()
    }

    pub fn voters(&self) -> &[(VoterId, PartialOrder)] {
        &self.voters
    }

    pub fn ids(&self) -> impl Iterator<Item = VoterId> + '_ {
        self.voters.iter().map(|(id, _)| *id)
    }

    pub fn orders(&self) -> impl Iterator<Item = &PartialOrder> + '_ {
        self.voters.iter().map(|(_, po)| po)
    }

    pub fn preference(&self, voter: VoterId) -> Option<&PartialOrder> {
        self.voters
            .iter()
            .find(|(id, _)| *id == voter)
            .map(|(_, po)| po)
    }

    /// `(≻′_i, ⪰_{-i})`: voter `i` reports `replacement` instead.
    pub fn replace(&self, voter: VoterId, replacement: PartialOrder) -> Result<Profile> {
        if replacement.m() != self.m {
            return Err(Error::Arity {
                expected: self.m,
                found: replacement.m(),
            });
        }
        let mut voters = self.voters.clone();
        match voters.iter_mut().find(|(id, _)| *id == voter) {
            Some(slot) => slot.1 = replacement,
            None => {
                return Err(Error::Config(format!(
                    "voter {voter} is not in the profile"
                )))
            }
        }
        Ok(Profile { m: self.m, voters })
    }

    /// Applies `σ` to every preference.
    pub fn relabel(&self, sigma: &Permutation) -> Profile {
        Profile {
            m: self.m,
            voters: self
                .voters
                .iter()
                .map(|(id, po)| (*id, po.relabel(sigma)))
                .collect(),
        }
    }

    /// `(⪰, ⪰′)`; the electorates must be disjoint.
    pub fn concat(&self, other: &Profile) -> Result<Profile> {
        if other.m != self.m {
            return Err(Error::Arity {
                expected: self.m,
                found: other.m,
            });
        }
        if let Some(id) = other.ids().find(|id| self.ids().any(|own| own == *id)) {
            return Err(Error::Overlap(id));
        }
        let mut voters = self.voters.clone();
        voters.extend_from_slice(&other.voters);
        Ok(Profile { m: self.m, voters })
    }

    /// `k⪰`: the original voters followed by `k - 1` copies. Copy voters take,
    /// in the original order, the smallest positive ids not in `reserved` and
    /// not used so far.
    pub fn replicate(&self, k: usize, reserved: &BTreeSet<VoterId>) -> Result<Profile> {
        if k == 0 {
            return Err(Error::Config("replication count must be at least 1".into()));
        }
        let mut used: BTreeSet<VoterId> = reserved.iter().copied().chain(self.ids()).collect();
        let mut voters = Vec::with_capacity(k * self.len());
        voters.extend_from_slice(&self.voters);
        let mut next = 1u32;
        for _ in 1..k {
            for (_, po) in &self.voters {
                while used.contains(&VoterId(next)) {
                    next += 1;
                }
                used.insert(VoterId(next));
                voters.push((VoterId(next), *po));
            }
        }
        Ok(Profile { m: self.m, voters })
    }

    /// `⪰̄`: one voter per relabeling of `po`, `m!` in total, with consecutive
    /// ids from `first_id`.
    pub fn symmetrized(po: &PartialOrder, first_id: u32, max_voters: u64) -> Result<Profile> {
        let m = po.m();
        let count: u64 = (1..=m as u64)
            .try_fold(1u64, |acc, i| acc.checked_mul(i))
            .unwrap_or(u64::MAX);
        if count > max_voters {
            return Err(Error::Resource {
                what: "symmetrized profile size",
                requested: count,
                limit: max_voters,
            });
        }
        Profile::numbered(
            first_id,
            Permutation::all(m).iter().map(|sigma| po.relabel(sigma)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preference::{AltSet, Alternative};

    fn linear(m: usize, order: &[usize]) -> PartialOrder {
        PartialOrder::from_edges(m, order.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    fn ids(p: &Profile) -> Vec<u32> {
        p.ids().map(|id| id.0).collect()
    }

    #[test]
    fn profile_validation() {
        let po = PartialOrder::empty(3).unwrap();
        assert_eq!(Profile::new(vec![]), Err(Error::EmptyProfile));
        assert_eq!(
            Profile::new(vec![(VoterId(0), po)]),
            Err(Error::ZeroVoterId)
        );
        assert_eq!(
            Profile::new(vec![(VoterId(2), po), (VoterId(2), po)]),
            Err(Error::DuplicateVoter(VoterId(2)))
        );
        let other = PartialOrder::empty(4).unwrap();
        assert!(matches!(
            Profile::new(vec![(VoterId(1), po), (VoterId(2), other)]),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn concat_joins_disjoint_electorates() {
        let po = PartialOrder::empty(3).unwrap();
        let first = Profile::new(vec![(VoterId(2), po), (VoterId(4), po)]).unwrap();
        let second =
            Profile::new(vec![(VoterId(1), po), (VoterId(7), po), (VoterId(9), po)]).unwrap();
        let both = first.concat(&second).unwrap();
        assert_eq!(ids(&both), vec![2, 4, 1, 7, 9]);
        assert_eq!(first.concat(&first), Err(Error::Overlap(VoterId(2))));
    }

    #[test]
    fn replication_follows_smallest_unused_ids() {
        let x = linear(3, &[0, 1, 2]);
        let y = linear(3, &[2, 1, 0]);
        let base = Profile::new(vec![(VoterId(2), x), (VoterId(4), y)]).unwrap();
        let extra = Profile::new(vec![(VoterId(1), x), (VoterId(7), x), (VoterId(9), y)]).unwrap();
        let reserved: BTreeSet<_> = base.ids().chain(extra.ids()).collect();
        let tripled = base.replicate(3, &reserved).unwrap();
        assert_eq!(ids(&tripled), vec![2, 4, 3, 5, 6, 8]);
        for id in [2, 3, 6] {
            assert_eq!(tripled.preference(VoterId(id)), Some(&x));
        }
        for id in [4, 5, 8] {
            assert_eq!(tripled.preference(VoterId(id)), Some(&y));
        }
        assert_eq!(base.replicate(1, &reserved).unwrap(), base);
        assert_eq!(base.replicate(7, &reserved).unwrap().len(), 14);
    }

    #[test]
    fn symmetrized_profile_has_factorial_size() {
        let po = PartialOrder::from_edges(3, [(0, 1)]).unwrap();
        let sym = Profile::symmetrized(&po, 1, 1000).unwrap();
        assert_eq!(sym.len(), 6);
        // every alternative is on top in 4 of the 6 relabelings
        for a in 0..3 {
            let on_top = sym
                .orders()
                .filter(|o| o.top().contains(Alternative(a)))
                .count();
            assert_eq!(on_top, 4);
        }
        let empty = PartialOrder::empty(3).unwrap();
        let sym = Profile::symmetrized(&empty, 10, 1000).unwrap();
        assert!(sym.orders().all(|o| *o == empty));
        assert_eq!(ids(&sym), vec![10, 11, 12, 13, 14, 15]);
        assert!(matches!(
            Profile::symmetrized(&PartialOrder::empty(6).unwrap(), 1, 100),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn replace_swaps_one_preference() {
        let x = linear(3, &[0, 1, 2]);
        let y = linear(3, &[2, 1, 0]);
        let p = Profile::numbered(1, [x, x]).unwrap();
        let q = p.replace(VoterId(2), y).unwrap();
        assert_eq!(q.preference(VoterId(2)), Some(&y));
        assert_eq!(q.preference(VoterId(1)), Some(&x));
        assert_eq!(
            p.replace(VoterId(1), y)
                .unwrap()
                .orders()
                .next()
                .unwrap()
                .top(),
            AltSet::from_indices([2])
        );
    }
}
