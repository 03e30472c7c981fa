//! Voting rules: positional scoring rules, standard approval voting, and the
//! counterexample rules used to separate the characterizing axioms.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::preference::{AltSet, Alternative, PartialOrder, Profile, Universe, VoterId};
use crate::scoring::{
    DoubledAlternative, Score, ScoringFunction, Side, UniformAntiPlurality, UniformPlurality,
};

/// Declared symmetry of a rule. Informational; the axiom checker never
/// trusts these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleTraits {
    pub anonymous: bool,
    pub neutral: bool,
    pub needs_voter_ids: bool,
}

impl Default for RuleTraits {
    fn default() -> Self {
        RuleTraits {
            anonymous: true,
            neutral: true,
            needs_voter_ids: false,
        }
    }
}

/// Maps a profile to a nonempty set of winners.
pub trait VotingRule: Send + Sync {
    fn name(&self) -> String;

    fn winners(&self, profile: &Profile) -> Result<AltSet>;

    fn traits(&self) -> RuleTraits {
        RuleTraits::default()
    }

    /// Present when the winners are exactly the argmax of summed per-voter
    /// contributions.
    fn additive(&self) -> Option<&dyn VoterScore> {
        None
    }

    /// Present when the rule is `F_s` for a (possibly non-positional) scoring
    /// function `s`.
    fn scoring_function(&self) -> Option<&dyn ScoringFunction> {
        None
    }
}

impl fmt::Debug for dyn VotingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VotingRule({})", self.name())
    }
}

/// Per-voter score contributions of an additive rule.
pub trait VoterScore: Send + Sync {
    fn add_contribution(&self, voter: VoterId, order: &PartialOrder, totals: &mut [Score]);

    /// Voters with ids above this bound all contribute alike.
    fn distinguished_ids(&self) -> u32 {
        0
    }
}

/// Alternatives with the maximal total.
pub fn argmax(totals: &[Score]) -> AltSet {
    let Some(best) = totals.iter().max() else {
        return AltSet::EMPTY;
    };
    totals
        .iter()
        .enumerate()
        .filter(|(_, t)| *t == best)
        .map(|(a, _)| Alternative(a as u8))
        .collect()
}

/// Exact per-alternative totals for a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreBoard {
    totals: Vec<Score>,
}

impl ScoreBoard {
    pub fn tally(score: &dyn VoterScore, profile: &Profile) -> ScoreBoard {
        let mut totals = vec![Score::zero(); profile.m()];
        for (id, order) in profile.voters() {
            score.add_contribution(*id, order, &mut totals);
        }
        ScoreBoard { totals }
    }

    pub fn from_totals(totals: Vec<Score>) -> ScoreBoard {
        ScoreBoard { totals }
    }

    pub fn totals(&self) -> &[Score] {
        &self.totals
    }

    pub fn total(&self, a: Alternative) -> Score {
        self.totals[a.index()]
    }

    pub fn winners(&self) -> AltSet {
        argmax(&self.totals)
    }
}

/// Winners of `F_s`.
pub fn winners_scoring(s: &dyn ScoringFunction, profile: &Profile) -> AltSet {
    let mut totals = vec![Score::zero(); profile.m()];
    for order in profile.orders() {
        for (a, t) in totals.iter_mut().enumerate() {
            *t += s.score(order, Alternative(a as u8));
        }
    }
    argmax(&totals)
}

/// The positional scoring rule `F_s`.
#[derive(Debug, Clone)]
pub struct ScoringRule {
    scorer: Arc<dyn ScoringFunction>,
}

impl ScoringRule {
    pub fn new(scorer: Arc<dyn ScoringFunction>) -> ScoringRule {
        ScoringRule { scorer }
    }

    pub fn uniform_plurality() -> ScoringRule {
        ScoringRule::new(Arc::new(UniformPlurality))
    }

    pub fn uniform_anti_plurality() -> ScoringRule {
        ScoringRule::new(Arc::new(UniformAntiPlurality))
    }

    pub fn scorer(&self) -> &Arc<dyn ScoringFunction> {
        &self.scorer
    }

    pub fn score_board(&self, profile: &Profile) -> ScoreBoard {
        ScoreBoard::tally(self, profile)
    }
}

impl VoterScore for ScoringRule {
    fn add_contribution(&self, _voter: VoterId, order: &PartialOrder, totals: &mut [Score]) {
        for (a, t) in totals.iter_mut().enumerate() {
            *t += self.scorer.score(order, Alternative(a as u8));
        }
    }
}

impl VotingRule for ScoringRule {
    fn name(&self) -> String {
        self.scorer.name()
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        Ok(self.score_board(profile).winners())
    }

    fn additive(&self) -> Option<&dyn VoterScore> {
        Some(self)
    }

    fn scoring_function(&self) -> Option<&dyn ScoringFunction> {
        Some(self.scorer.as_ref())
    }
}

/// Standard approval voting: most approvals win. Every ballot must be an
/// approval ballot.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardApproval;

impl StandardApproval {
    pub fn approval_counts(profile: &Profile) -> Result<Vec<Score>> {
        let mut counts = vec![Score::zero(); profile.m()];
        for (id, order) in profile.voters() {
            if !order.is_approval_ballot() {
                return Err(Error::Domain(*id));
            }
            for a in order.top().iter() {
                counts[a.index()] += 1;
            }
        }
        Ok(counts)
    }
}

impl VotingRule for StandardApproval {
    fn name(&self) -> String {
        "approval".into()
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        Ok(argmax(&Self::approval_counts(profile)?))
    }
}

/// Always selects every alternative.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullSet;

impl VotingRule for FullSet {
    fn name(&self) -> String {
        "full-set".into()
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        Ok(AltSet::full(profile.m()))
    }
}

fn uniform_totals(side: Side, profile: &Profile) -> Vec<Score> {
    let mut totals = vec![Score::zero(); profile.m()];
    for order in profile.orders() {
        for a in side.set_of(order).iter() {
            match side {
                Side::Top => totals[a.index()] += 1,
                Side::Bottom => totals[a.index()] -= 1,
            }
        }
    }
    totals
}

/// Two-step refinement of the uniform rule.
///
/// Top side: among the uniform plurality winners keep those that are the
/// unique top of some voter, if any. Bottom side: among the uniform
/// anti-plurality winners keep those that are nobody's unique bottom, if any.
#[derive(Debug, Clone, Copy)]
pub struct TwoStep {
    pub side: Side,
}

impl VotingRule for TwoStep {
    fn name(&self) -> String {
        format!("two-step-{}", self.side.name())
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        let first = argmax(&uniform_totals(self.side, profile));
        let unique: AltSet = profile
            .orders()
            .map(|o| self.side.set_of(o))
            .filter(|s| s.len() == 1)
            .fold(AltSet::EMPTY, AltSet::union);
        let refined = match self.side {
            Side::Top => first.intersection(unique),
            Side::Bottom => first.difference(unique),
        };
        Ok(if refined.is_empty() { first } else { refined })
    }
}

/// Uniform winners plus everything exactly one point behind them; a
/// single voter gets their top (top side) or non-bottom (bottom side).
#[derive(Debug, Clone, Copy)]
pub struct RunnerUp {
    pub side: Side,
}

impl VotingRule for RunnerUp {
    fn name(&self) -> String {
        match self.side {
            Side::Top => "runner-up-plurality".into(),
            Side::Bottom => "runner-up-anti-plurality".into(),
        }
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        if let [(_, order)] = profile.voters() {
            let chosen = match self.side {
                Side::Top => order.top(),
                Side::Bottom => order.non_bottom(),
            };
            // the empty relation has no non-bottom; fall back to the uniform winners
            if !chosen.is_empty() {
                return Ok(chosen);
            }
        }
        let totals = uniform_totals(self.side, profile);
        let best = totals.iter().max().copied().unwrap_or_default();
        Ok(totals
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == best || **t == best - 1)
            .map(|(a, _)| Alternative(a as u8))
            .collect())
    }
}

/// Uniform (anti-)plurality with one fixed alternative's total doubled.
#[derive(Debug, Clone)]
pub struct BiasedAlternative {
    scorer: DoubledAlternative,
    label: String,
}

impl BiasedAlternative {
    pub fn new(favoured: Alternative, side: Side) -> BiasedAlternative {
        let label = Universe::standard(favoured.index() + 1)
            .label(favoured)
            .to_string();
        BiasedAlternative::labelled(favoured, side, label)
    }

    pub fn labelled(
        favoured: Alternative,
        side: Side,
        label: impl Into<String>,
    ) -> BiasedAlternative {
        BiasedAlternative {
            scorer: DoubledAlternative { favoured, side },
            label: label.into(),
        }
    }

    pub fn favoured(&self) -> Alternative {
        self.scorer.favoured
    }
}

impl VoterScore for BiasedAlternative {
    fn add_contribution(&self, _voter: VoterId, order: &PartialOrder, totals: &mut [Score]) {
        for (a, t) in totals.iter_mut().enumerate() {
            *t += self.scorer.score(order, Alternative(a as u8));
        }
    }
}

impl VotingRule for BiasedAlternative {
    fn name(&self) -> String {
        format!("double:{}-{}", self.label, self.scorer.side.name())
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        Ok(ScoreBoard::tally(self, profile).winners())
    }

    fn traits(&self) -> RuleTraits {
        RuleTraits {
            neutral: false,
            ..RuleTraits::default()
        }
    }

    fn additive(&self) -> Option<&dyn VoterScore> {
        Some(self)
    }

    fn scoring_function(&self) -> Option<&dyn ScoringFunction> {
        Some(&self.scorer)
    }
}

/// Uniform (anti-)plurality where the voter with id 1 counts twice.
#[derive(Debug, Clone, Copy)]
pub struct VoterPrivilege {
    pub side: Side,
}

impl VoterScore for VoterPrivilege {
    fn add_contribution(&self, voter: VoterId, order: &PartialOrder, totals: &mut [Score]) {
        let weight = if voter == VoterId(1) { 2 } else { 1 };
        for a in self.side.set_of(order).iter() {
            match self.side {
                Side::Top => totals[a.index()] += weight,
                Side::Bottom => totals[a.index()] -= weight,
            }
        }
    }

    fn distinguished_ids(&self) -> u32 {
        1
    }
}

impl VotingRule for VoterPrivilege {
    fn name(&self) -> String {
        format!("voter1-{}", self.side.name())
    }

    fn winners(&self, profile: &Profile) -> Result<AltSet> {
        Ok(ScoreBoard::tally(self, profile).winners())
    }

    fn traits(&self) -> RuleTraits {
        RuleTraits {
            anonymous: false,
            needs_voter_ids: true,
            ..RuleTraits::default()
        }
    }

    fn additive(&self) -> Option<&dyn VoterScore> {
        Some(self)
    }
}
