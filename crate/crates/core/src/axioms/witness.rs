use std::collections::BTreeSet;

use super::Axiom;
use crate::error::{Error, Result};
use crate::preference::{AltSet, Alternative, PartialOrder, Permutation, Profile, VoterId};
use crate::rules::VotingRule;

/// How a Continuity failure was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Exact: the rule is additive and its totals grow linearly in `k`.
    Analytic,
    /// The outcome stayed constant and disjoint from `F(⪰)` over the whole
    /// verification window.
    Stabilized,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Analytic => "analytic",
            CertificateKind::Stabilized => "stabilized",
        }
    }
}

/// Evidence that `F(k⪰, ⪰′) ⊄ F(⪰)` for every `k ≥ from_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContinuityCertificate {
    pub kind: CertificateKind,
    pub from_k: u64,
    /// Number of consecutive `k` from `from_k` that replay checks.
    pub window: u64,
    /// The outcome the replicated profiles settle on.
    pub eventual: AltSet,
}

/// A concrete instance on which a rule violates an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Same preferences, voters renamed position by position.
    Renaming {
        profile: Profile,
        renamed: Profile,
    },
    Relabeling {
        profile: Profile,
        sigma: Permutation,
    },
    /// Two profiles on disjoint electorates.
    Split {
        first: Profile,
        second: Profile,
    },
    Continuity {
        first: Profile,
        second: Profile,
        certificate: ContinuityCertificate,
    },
    SingleVoter {
        profile: Profile,
    },
    Congruity {
        first: Profile,
        second: Profile,
        x: Alternative,
    },
    Replacement {
        profile: Profile,
        voter: VoterId,
        replacement: PartialOrder,
    },
    /// Two profiles on the same electorate with equal tops (or bottoms) voter by voter.
    SameSets {
        first: Profile,
        second: Profile,
    },
}

impl Witness {
    /// Kind tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Renaming { .. } => "renaming",
            Witness::Relabeling { .. } => "relabeling",
            Witness::Split { .. } => "split",
            Witness::Continuity { .. } => "continuity",
            Witness::SingleVoter { .. } => "single-voter",
            Witness::Congruity { .. } => "congruity",
            Witness::Replacement { .. } => "replacement",
            Witness::SameSets { .. } => "same-sets",
        }
    }

    /// Named profiles in the witness, in a fixed order.
    pub fn profiles(&self) -> Vec<(&'static str, Profile)> {
        match self {
            Witness::Renaming { profile, renamed } => {
                vec![("profile", profile.clone()), ("renamed", renamed.clone())]
            }
            Witness::Relabeling { profile, sigma } => {
                vec![
                    ("profile", profile.clone()),
                    ("relabeled", profile.relabel(sigma)),
                ]
            }
            Witness::Split { first, second }
            | Witness::Continuity { first, second, .. }
            | Witness::Congruity { first, second, .. }
            | Witness::SameSets { first, second } => {
                vec![("first", first.clone()), ("second", second.clone())]
            }
            Witness::SingleVoter { profile } => vec![("profile", profile.clone())],
            Witness::Replacement {
                profile,
                voter,
                replacement,
            } => {
                let after = profile
                    .replace(*voter, *replacement)
                    .unwrap_or_else(|_| profile.clone());
                vec![("profile", profile.clone()), ("replaced", after)]
            }
        }
    }

    /// Re-evaluates `rule` on the witness from scratch and reports whether
    /// the axiom's defining condition is violated.
    pub fn violates(&self, axiom: Axiom, rule: &dyn VotingRule) -> Result<bool> {
        let mismatch = || {
            Error::Config(format!(
                "a {} witness cannot refute {}",
                self.kind(),
                axiom.id()
            ))
        };
        Ok(match (self, axiom) {
            (Witness::Renaming { profile, renamed }, Axiom::Anonymity) => {
                let same_orders =
                    profile.len() == renamed.len() && profile.orders().eq(renamed.orders());
                same_orders && rule.winners(profile)? != rule.winners(renamed)?
            }
            (Witness::Relabeling { profile, sigma }, Axiom::Neutrality) => neutrality_violation(
                sigma,
                rule.winners(profile)?,
                rule.winners(&profile.relabel(sigma))?,
            ),
            (Witness::Split { first, second }, Axiom::Reinforcement) => reinforcement_violation(
                rule.winners(first)?,
                rule.winners(second)?,
                rule.winners(&first.concat(second)?)?,
            )
            .unwrap_or(false),
            (
                Witness::Continuity {
                    first,
                    second,
                    certificate,
                },
                Axiom::Continuity,
            ) => {
                let base = rule.winners(first)?;
                let mut all = certificate.window > 0;
                for k in certificate.from_k..certificate.from_k + certificate.window {
                    let outcome = rule.winners(&replicated(first, second, k)?)?;
                    all &= !outcome.is_subset(base);
                }
                all
            }
            (Witness::SingleVoter { profile }, _) if axiom.is_single_voter() => {
                match profile.voters() {
                    [(_, order)] => single_voter_violation(axiom, order, rule.winners(profile)?)
                        .unwrap_or(false),
                    _ => false,
                }
            }
            (Witness::Congruity { first, second, x }, Axiom::TCongruity | Axiom::BCongruity) => {
                congruity_violation(
                    axiom,
                    *x,
                    rule.winners(first)?,
                    second,
                    rule.winners(&first.concat(second)?)?,
                )
                .unwrap_or(false)
            }
            (
                Witness::Replacement {
                    profile,
                    voter,
                    replacement,
                },
                _,
            ) if axiom.is_replacement() => {
                let original = profile.preference(*voter).ok_or_else(mismatch)?;
                let after = profile.replace(*voter, *replacement)?;
                replacement_violation(
                    axiom,
                    original,
                    replacement,
                    rule.winners(profile)?,
                    rule.winners(&after)?,
                )
                .unwrap_or(false)
            }
            (Witness::SameSets { first, second }, Axiom::TopsOnly | Axiom::BottomsOnly) => {
                let same_ids = first.ids().eq(second.ids());
                same_ids
                    && same_sets(axiom, first, second)
                    && rule.winners(first)? != rule.winners(second)?
            }
            _ => return Err(mismatch()),
        })
    }
}

/// `(k⪰, ⪰′)` with copies numbered as the Continuity axiom prescribes.
pub fn replicated(first: &Profile, second: &Profile, k: u64) -> Result<Profile> {
    let reserved: BTreeSet<VoterId> = first.ids().chain(second.ids()).collect();
    first.replicate(k as usize, &reserved)?.concat(second)
}

pub(crate) fn neutrality_violation(sigma: &Permutation, before: AltSet, after: AltSet) -> bool {
    sigma.apply_set(before) != after
}

/// `None` when the winner sets of the parts do not meet.
pub(crate) fn reinforcement_violation(
    first: AltSet,
    second: AltSet,
    joint: AltSet,
) -> Option<bool> {
    let common = first.intersection(second);
    (!common.is_empty()).then(|| joint != common)
}

/// `None` when the single-voter antecedent does not apply.
pub(crate) fn single_voter_violation(
    axiom: Axiom,
    order: &PartialOrder,
    winners: AltSet,
) -> Option<bool> {
    let full = order.alternatives();
    match axiom {
        Axiom::PartialFaithfulness => Some(!winners.is_subset(order.top())),
        Axiom::Faithfulness => Some(winners != order.top()),
        Axiom::PartialAverseness => {
            (order.bottom() != full).then(|| order.bottom().is_subset(winners))
        }
        Axiom::Averseness => (order.bottom() != full).then(|| !order.bottom().is_disjoint(winners)),
        _ => None,
    }
}

/// Union of the tops (T-Congruity) or bottoms (B-Congruity) of `second`.
pub(crate) fn congruity_cover(axiom: Axiom, second: &Profile) -> AltSet {
    second
        .orders()
        .map(|o| {
            if axiom == Axiom::TCongruity {
                o.top()
            } else {
                o.bottom()
            }
        })
        .fold(AltSet::EMPTY, AltSet::union)
}

/// `None` when `x` does not satisfy the antecedent.
pub(crate) fn congruity_violation(
    axiom: Axiom,
    x: Alternative,
    first: AltSet,
    second: &Profile,
    joint: AltSet,
) -> Option<bool> {
    congruity_violation_with_cover(axiom, x, first, congruity_cover(axiom, second), joint)
}

pub(crate) fn congruity_violation_with_cover(
    axiom: Axiom,
    x: Alternative,
    first: AltSet,
    cover: AltSet,
    joint: AltSet,
) -> Option<bool> {
    if cover.contains(x) {
        return None;
    }
    match axiom {
        Axiom::TCongruity => (!first.contains(x)).then(|| joint.contains(x)),
        Axiom::BCongruity => first.contains(x).then(|| !joint.contains(x)),
        _ => None,
    }
}

/// Contraction and Expansion, plain and strong. `None` when the replacement
/// does not satisfy the antecedent.
pub(crate) fn replacement_violation(
    axiom: Axiom,
    original: &PartialOrder,
    replacement: &PartialOrder,
    before: AltSet,
    after: AltSet,
) -> Option<bool> {
    let (t, t2) = (original.top(), replacement.top());
    let (b, b2) = (original.bottom(), replacement.bottom());
    match axiom {
        Axiom::Contraction => {
            let kept = before.intersection(t2);
            (t2.is_subset(t) && !kept.is_empty()).then(|| !kept.is_subset(after))
        }
        Axiom::StrongContraction => t2
            .is_subset(t)
            .then(|| !before.difference(t.difference(t2)).is_subset(after)),
        Axiom::Expansion => {
            let kept = before.intersection(b);
            (b.is_subset(b2) && !kept.is_empty()).then(|| !kept.is_subset(after))
        }
        Axiom::StrongExpansion => b
            .is_subset(b2)
            .then(|| !before.difference(b2.difference(b)).is_subset(after)),
        _ => None,
    }
}

pub(crate) fn same_sets(axiom: Axiom, first: &Profile, second: &Profile) -> bool {
    let key = |o: &PartialOrder| {
        if axiom == Axiom::TopsOnly {
            o.top()
        } else {
            o.bottom()
        }
    };
    first.len() == second.len()
        && first
            .orders()
            .zip(second.orders())
            .all(|(a, b)| key(a) == key(b))
}
