use itertools::Itertools;

use super::CheckConfig;
use crate::error::{Error, Result};
use crate::par;
use crate::preference::{enumerate_with, AltSet, PartialOrder, Profile, VoterId};
use crate::rules::VotingRule;

/// The bounded universe of profiles a checker quantifies over: every
/// sequence of 1..=max_voters domain orders, shorter sequences first, each
/// length in lexicographic order of order indices.
pub(crate) struct Space {
    pub m: usize,
    pub orders: Vec<PartialOrder>,
    pub profiles: Vec<Vec<u16>>,
    pub parallel: bool,
    max_instances: u64,
}

impl Space {
    pub fn new(cfg: &CheckConfig) -> Result<Space> {
        cfg.validate()?;
        let orders: Vec<PartialOrder> = enumerate_with(cfg.m, &cfg.limits)?
            .into_iter()
            .filter(|po| cfg.domain.contains(po))
            .collect();
        let d = orders.len() as u64;
        let mut total = 0u64;
        let mut layer = 1u64;
        for _ in 0..cfg.max_voters {
            layer = layer.saturating_mul(d);
            total = total.saturating_add(layer);
        }
        if total > cfg.max_instances {
            return Err(Error::Resource {
                what: "profile count",
                requested: total,
                limit: cfg.max_instances,
            });
        }

        let mut profiles = Vec::with_capacity(total as usize);
        for n in 1..=cfg.max_voters {
            profiles.extend((0..n).map(|_| 0..d as u16).multi_cartesian_product());
        }
        Ok(Space {
            m: cfg.m,
            orders,
            profiles,
            parallel: cfg.parallel,
            max_instances: cfg.max_instances,
        })
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn budget(&self, what: &'static str, requested: u64) -> Result<()> {
        if requested > self.max_instances {
            return Err(Error::Resource {
                what,
                requested,
                limit: self.max_instances,
            });
        }
        Ok(())
    }

    pub fn voters(&self, idx: usize) -> usize {
        self.profiles[idx].len()
    }

    pub fn order(&self, idx: usize, position: usize) -> &PartialOrder {
        &self.orders[self.profiles[idx][position] as usize]
    }

    /// Profile `idx` with consecutive ids from `first_id`.
    pub fn profile(&self, idx: usize, first_id: u32) -> Profile {
        let voters = self.profiles[idx]
            .iter()
            .enumerate()
            .map(|(i, &o)| (VoterId(first_id + i as u32), self.orders[o as usize]))
            .collect();
        Profile::from_parts_unchecked(self.m, voters)
    }

    /// Profile `first` on ids `1..=n1` followed by `second` on the next ids.
    pub fn pair(&self, first: usize, second: usize) -> (Profile, Profile) {
        let n1 = self.voters(first) as u32;
        (self.profile(first, 1), self.profile(second, n1 + 1))
    }

    /// Winners of every profile, numbered from `first_id`.
    pub fn winners(&self, rule: &dyn VotingRule, first_id: u32) -> Result<Vec<AltSet>> {
        par::try_map_indexed(self.len(), self.parallel, |i| {
            rule.winners(&self.profile(i, first_id))
        })
    }

    /// `tables[o - 1]` holds winners with ids starting at `o`, for every
    /// offset a second profile in a pair can start from.
    pub fn offset_winners(
        &self,
        rule: &dyn VotingRule,
        max_voters: usize,
    ) -> Result<Vec<Vec<AltSet>>> {
        (1..=max_voters as u32 + 1)
            .map(|o| self.winners(rule, o))
            .collect()
    }

    /// Position of a sequence of order indices in the enumeration.
    pub fn index_of(&self, digits: &[u16]) -> usize {
        let d = self.orders.len();
        let shorter: usize = (1..digits.len()).map(|n| d.pow(n as u32)).sum();
        shorter + digits.iter().fold(0usize, |acc, &x| acc * d + x as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Domain;

    #[test]
    fn profiles_are_ordered_by_size_then_lexicographically() {
        let cfg = CheckConfig::new(3, 2);
        let space = Space::new(&cfg).unwrap();
        assert_eq!(space.orders.len(), 19);
        assert_eq!(space.len(), 19 + 361);
        assert_eq!(space.profiles[0], vec![0]);
        assert_eq!(space.profiles[19], vec![0, 0]);
        assert_eq!(space.profiles[20], vec![0, 1]);
        assert_eq!(space.profiles[379], vec![18, 18]);
        for (i, digits) in space.profiles.iter().enumerate() {
            assert_eq!(space.index_of(digits), i);
        }
    }

    #[test]
    fn domain_filters_orders() {
        let linear = Space::new(&CheckConfig::new(3, 1).with_domain(Domain::Linear)).unwrap();
        assert_eq!(linear.orders.len(), 6);
        let approval = Space::new(&CheckConfig::new(3, 1).with_domain(Domain::Approval)).unwrap();
        assert_eq!(approval.orders.len(), 6);
        assert!(approval.orders.iter().all(|o| o.is_approval_ballot()));
    }

    #[test]
    fn profile_budget() {
        let mut cfg = CheckConfig::new(3, 3);
        cfg.max_instances = 1000;
        assert!(matches!(Space::new(&cfg), Err(Error::Resource { .. })));
    }

    #[test]
    fn pairs_use_disjoint_consecutive_ids() {
        let space = Space::new(&CheckConfig::new(3, 2)).unwrap();
        let (p, q) = space.pair(25, 3);
        assert_eq!(p.ids().map(|v| v.0).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(q.ids().map(|v| v.0).collect::<Vec<_>>(), vec![3]);
    }
}
