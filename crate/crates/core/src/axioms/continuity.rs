use num_traits::Zero;

use super::witness::{replicated, CertificateKind, ContinuityCertificate};
use crate::error::Result;
use crate::preference::{AltSet, Alternative, Profile};
use crate::rules::{argmax, ScoreBoard, VoterScore, VotingRule};
use crate::scoring::Score;

/// What the Continuity analysis concluded for one pair `(⪰, ⪰′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairOutcome {
    /// `F(k⪰, ⪰′) ⊆ F(⪰)` for every `k` above this bound.
    Bound(u64),
    Violated(ContinuityCertificate),
    /// The bounded search found no `K` and no certificate.
    Unresolved,
}

/// Settings of the bounded search used for non-additive rules.
#[derive(Debug, Clone, Copy)]
pub struct Search {
    pub k_max: u64,
    pub verify_window: u64,
}

/// Decides Continuity for one pair.
pub fn analyze_pair(
    rule: &dyn VotingRule,
    first: &Profile,
    second: &Profile,
    search: Search,
) -> Result<PairOutcome> {
    let base = rule.winners(first)?;
    match rule.additive() {
        Some(score) => analytic(score, first, second, base, search),
        None => simulate(rule, first, second, base, search),
    }
}

fn simulate(
    rule: &dyn VotingRule,
    first: &Profile,
    second: &Profile,
    base: AltSet,
    search: Search,
) -> Result<PairOutcome> {
    let horizon = search.k_max + search.verify_window;
    let mut last_violation = 0;
    let mut tail: Vec<AltSet> = Vec::new();
    for k in 1..=horizon {
        let outcome = rule.winners(&replicated(first, second, k)?)?;
        if !outcome.is_subset(base) {
            last_violation = k;
        }
        if k > search.k_max {
            tail.push(outcome);
        }
    }
    if last_violation <= search.k_max {
        return Ok(PairOutcome::Bound(last_violation));
    }
    let settled = tail[0];
    if tail.iter().all(|o| *o == settled) && settled.is_disjoint(base) {
        return Ok(PairOutcome::Violated(ContinuityCertificate {
            kind: CertificateKind::Stabilized,
            from_k: search.k_max + 1,
            window: search.verify_window,
            eventual: settled,
        }));
    }
    Ok(PairOutcome::Unresolved)
}

fn tally(score: &dyn VoterScore, first: &Profile, second: &Profile, k: u64) -> Result<Vec<Score>> {
    Ok(ScoreBoard::tally(score, &replicated(first, second, k)?)
        .totals()
        .to_vec())
}

// Past `k0` every added copy contributes the same vector `delta`, so the
// totals are `t0 + (k - k0)·delta` and each alternative wins on an interval
// of `k` that can be solved for exactly.
fn analytic(
    score: &dyn VoterScore,
    first: &Profile,
    second: &Profile,
    base: AltSet,
    search: Search,
) -> Result<PairOutcome> {
    let k0 = stable_from(score, first, second)?;
    let mut last_violation = 0;
    for k in 1..k0 {
        if !argmax(&tally(score, first, second, k)?).is_subset(base) {
            last_violation = k;
        }
    }
    let t0 = tally(score, first, second, k0)?;
    let t1 = tally(score, first, second, k0 + 1)?;
    let delta: Vec<Score> = t1.iter().zip(&t0).map(|(a, b)| a - b).collect();

    let growth = argmax(&delta);
    let eventual = growth
        .iter()
        .filter(|a| growth.iter().all(|b| t0[a.index()] >= t0[b.index()]))
        .collect::<AltSet>();

    if let Some(e) = eventual.difference(base).iter().next() {
        let (lo, _) = winning_interval(e, &t0, &delta);
        let from_k = k0 + lo.max(0) as u64;
        return Ok(PairOutcome::Violated(ContinuityCertificate {
            kind: CertificateKind::Analytic,
            from_k,
            window: search.verify_window.max(1),
            eventual,
        }));
    }

    let m = t0.len();
    for b in AltSet::full(m).difference(base).iter() {
        let (lo, hi) = winning_interval(b, &t0, &delta);
        let lo = lo.max(0);
        if let Some(hi) = hi {
            if lo <= hi {
                last_violation = last_violation.max(k0 + hi as u64);
            }
        }
    }
    Ok(PairOutcome::Bound(last_violation))
}

// Integer `t ≥ 0` range on which `b` attains the maximum of `t0 + t·delta`:
// lower bound, and upper bound when finite. An empty range comes back with
// `lo > hi`.
fn winning_interval(b: Alternative, t0: &[Score], delta: &[Score]) -> (i64, Option<i64>) {
    let mut lo = 0i64;
    let mut hi: Option<i64> = None;
    for a in 0..t0.len() {
        if a == b.index() {
            continue;
        }
        let slope = delta[b.index()] - delta[a];
        let gap = t0[a] - t0[b.index()];
        // need slope·t ≥ gap
        if slope.is_zero() {
            if gap > Score::zero() {
                return (1, Some(0));
            }
        } else if slope > Score::zero() {
            lo = lo.max((gap / slope).ceil().to_integer());
        } else {
            let bound = (gap / slope).floor().to_integer();
            hi = Some(hi.map_or(bound, |h: i64| h.min(bound)));
        }
    }
    if let Some(h) = hi {
        if h < 0 {
            return (1, Some(0));
        }
    }
    (lo, hi)
}

// Smallest `k0 ≥ 1` after which every further copy is numbered beyond the
// rule's distinguished ids.
fn stable_from(score: &dyn VoterScore, first: &Profile, second: &Profile) -> Result<u64> {
    let bound = score.distinguished_ids();
    let n = first.len();
    let mut k = 1;
    loop {
        let next = replicated(first, second, k + 1)?;
        let copy_ids = next.voters()[k as usize * n..(k as usize + 1) * n]
            .iter()
            .map(|(id, _)| id.0);
        if copy_ids.clone().all(|id| id > bound) {
            return Ok(k);
        }
        k += 1;
    }
}
