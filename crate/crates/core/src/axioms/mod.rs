//! Bounded exhaustive checking of the axioms against any [`VotingRule`].
//!
//! Every checker quantifies over profiles built from
//! [`enumerate_partial_orders`](crate::preference::enumerate_partial_orders),
//! filtered by the configured [`Domain`], with electorates of at most
//! `max_voters`. A `Pass` is a statement about those bounds only. A `Fail`
//! carries the first violating instance in enumeration order, which
//! [`Witness::violates`] re-checks from scratch.

mod continuity;
mod space;
mod witness;

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

pub use continuity::{analyze_pair, PairOutcome, Search};
pub use witness::{replicated, CertificateKind, ContinuityCertificate, Witness};

use crate::error::{Error, Result};
use crate::par;
use crate::preference::{AltSet, Alternative, Limits, PartialOrder, Permutation, Profile, VoterId};
use crate::rules::VotingRule;
use space::Space;
use witness::{
    congruity_cover, congruity_violation_with_cover, neutrality_violation, reinforcement_violation,
    replacement_violation, same_sets, single_voter_violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Anonymity,
    Neutrality,
    Reinforcement,
    Continuity,
    PartialFaithfulness,
    Faithfulness,
    PartialAverseness,
    Averseness,
    TCongruity,
    BCongruity,
    Contraction,
    StrongContraction,
    Expansion,
    StrongExpansion,
    TopsOnly,
    BottomsOnly,
}

impl Axiom {
    pub const ALL: [Axiom; 16] = [
        Axiom::Anonymity,
        Axiom::Neutrality,
        Axiom::Reinforcement,
        Axiom::Continuity,
        Axiom::PartialFaithfulness,
        Axiom::Faithfulness,
        Axiom::PartialAverseness,
        Axiom::Averseness,
        Axiom::TCongruity,
        Axiom::BCongruity,
        Axiom::Contraction,
        Axiom::StrongContraction,
        Axiom::Expansion,
        Axiom::StrongExpansion,
        Axiom::TopsOnly,
        Axiom::BottomsOnly,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::Anonymity => "anonymity",
            Axiom::Neutrality => "neutrality",
            Axiom::Reinforcement => "reinforcement",
            Axiom::Continuity => "continuity",
            Axiom::PartialFaithfulness => "partial-faithfulness",
            Axiom::Faithfulness => "faithfulness",
            Axiom::PartialAverseness => "partial-averseness",
            Axiom::Averseness => "averseness",
            Axiom::TCongruity => "t-congruity",
            Axiom::BCongruity => "b-congruity",
            Axiom::Contraction => "contraction",
            Axiom::StrongContraction => "strong-contraction",
            Axiom::Expansion => "expansion",
            Axiom::StrongExpansion => "strong-expansion",
            Axiom::TopsOnly => "tops-only",
            Axiom::BottomsOnly => "bottoms-only",
        }
    }

    pub(crate) fn is_single_voter(self) -> bool {
        matches!(
            self,
            Axiom::PartialFaithfulness
                | Axiom::Faithfulness
                | Axiom::PartialAverseness
                | Axiom::Averseness
        )
    }

    pub(crate) fn is_replacement(self) -> bool {
        matches!(
            self,
            Axiom::Contraction
                | Axiom::StrongContraction
                | Axiom::Expansion
                | Axiom::StrongExpansion
        )
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axiom> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown axiom `{s}`")))
    }
}

/// Which preferences the quantified profiles may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Domain {
    #[default]
    All,
    Linear,
    Approval,
}

impl Domain {
    pub fn id(self) -> &'static str {
        match self {
            Domain::All => "all",
            Domain::Linear => "linear",
            Domain::Approval => "approval",
        }
    }

    pub fn contains(self, po: &PartialOrder) -> bool {
        match self {
            Domain::All => true,
            Domain::Linear => po.is_linear(),
            Domain::Approval => po.is_approval_ballot(),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Domain> {
        match s {
            "all" => Ok(Domain::All),
            "linear" => Ok(Domain::Linear),
            "approval" => Ok(Domain::Approval),
            _ => Err(Error::Config(format!("unknown domain `{s}`"))),
        }
    }
}

/// Bounds and knobs for a check.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub m: usize,
    /// Largest electorate of each quantified profile.
    pub max_voters: usize,
    pub domain: Domain,
    /// Largest Continuity bound the bounded search tries.
    pub k_max: u64,
    /// Consecutive `k` past `k_max` that must agree.
    pub verify_window: u64,
    /// Profiles tried before enumeration by the Anonymity (ids reversed) and
    /// Neutrality (every relabeling) checkers.
    pub seed_profiles: Vec<Profile>,
    /// Disjoint pairs tried before enumeration by the two-profile checkers.
    pub seed_pairs: Vec<(Profile, Profile)>,
    pub parallel: bool,
    /// Cap on enumerated profiles and on instances per checker.
    pub max_instances: u64,
    pub limits: Limits,
}

impl CheckConfig {
    pub fn new(m: usize, max_voters: usize) -> CheckConfig {
        CheckConfig {
            m,
            max_voters,
            domain: Domain::All,
            k_max: 25,
            verify_window: 5,
            seed_profiles: Vec::new(),
            seed_pairs: Vec::new(),
            parallel: par::available(),
            max_instances: 50_000_000,
            limits: Limits::from_env(),
        }
    }

    pub fn with_domain(mut self, domain: Domain) -> CheckConfig {
        self.domain = domain;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> CheckConfig {
        self.parallel = parallel;
        self
    }

    pub fn with_seed_pair(mut self, first: Profile, second: Profile) -> CheckConfig {
        self.seed_pairs.push((first, second));
        self
    }

    pub fn with_seed_profile(mut self, profile: Profile) -> CheckConfig {
        self.seed_profiles.push(profile);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 3 {
            return Err(Error::Config(
                "axiom checks need at least 3 alternatives".into(),
            ));
        }
        if self.max_voters == 0 {
            return Err(Error::Config("max_voters must be at least 1".into()));
        }
        if self.verify_window == 0 {
            return Err(Error::Config("verify_window must be at least 1".into()));
        }
        self.limits.check_m(self.m)?;
        let seeds = self
            .seed_profiles
            .iter()
            .chain(self.seed_pairs.iter().flat_map(|(p, q)| [p, q]));
        for p in seeds {
            if p.m() != self.m {
                return Err(Error::Arity {
                    expected: self.m,
                    found: p.m(),
                });
            }
        }
        Ok(())
    }

    pub fn bounds(&self) -> Bounds {
        Bounds {
            m: self.m,
            max_voters: self.max_voters,
            domain: self.domain,
        }
    }

    fn search(&self) -> Search {
        Search {
            k_max: self.k_max,
            verify_window: self.verify_window,
        }
    }
}

/// The bounds a verdict was reached under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub m: usize,
    pub max_voters: usize,
    pub domain: Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Box<Witness>),
    Inconclusive(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub axiom: Axiom,
    pub verdict: Verdict,
    /// Quantified instances examined, including those where the premise
    /// fails and the axiom holds vacuously.
    pub instances_checked: u64,
    pub bounds: Bounds,
    /// Largest Continuity bound needed across the checked pairs.
    pub continuity_bound: Option<u64>,
}

// Per-row scan result: instances evaluated and the row's first violation.
type Row = (u64, Option<Witness>);

fn scan<F>(space: &Space, rows: usize, f: F) -> Result<(u64, Option<Witness>)>
where
    F: Fn(usize) -> Result<Row> + Sync + Send,
{
    let results = par::try_map_indexed(rows, space.parallel, f)?;
    let mut total = 0;
    let mut first = None;
    for (count, witness) in results {
        total += count;
        if first.is_none() {
            first = witness;
        }
    }
    Ok((total, first))
}

fn finish(
    axiom: Axiom,
    cfg: &CheckConfig,
    instances: u64,
    witness: Option<Witness>,
) -> CheckResult {
    let verdict = match witness {
        Some(w) => Verdict::Fail(Box::new(w)),
        None if instances == 0 => Verdict::Inconclusive("the bounds admit no instance".into()),
        None => Verdict::Pass,
    };
    CheckResult {
        axiom,
        verdict,
        instances_checked: instances,
        bounds: cfg.bounds(),
        continuity_bound: None,
    }
}

/// Tries the configured seeds; returns a failing result if one violates.
fn try_seeds(
    axiom: Axiom,
    rule: &dyn VotingRule,
    cfg: &CheckConfig,
) -> Result<Option<CheckResult>> {
    let mut candidates = Vec::new();
    match axiom {
        Axiom::Reinforcement => {
            for (p, q) in &cfg.seed_pairs {
                candidates.push(Witness::Split {
                    first: p.clone(),
                    second: q.clone(),
                });
            }
        }
        Axiom::TCongruity | Axiom::BCongruity => {
            for (p, q) in &cfg.seed_pairs {
                for x in 0..cfg.m {
                    candidates.push(Witness::Congruity {
                        first: p.clone(),
                        second: q.clone(),
                        x: Alternative(x as u8),
                    });
                }
            }
        }
        Axiom::Continuity => {
            for (p, q) in &cfg.seed_pairs {
                if let PairOutcome::Violated(certificate) = analyze_pair(rule, p, q, cfg.search())?
                {
                    candidates.push(Witness::Continuity {
                        first: p.clone(),
                        second: q.clone(),
                        certificate,
                    });
                }
            }
        }
        Axiom::Anonymity => {
            for p in &cfg.seed_profiles {
                let ids: Vec<VoterId> = p.ids().collect();
                let voters = ids
                    .iter()
                    .rev()
                    .zip(p.orders())
                    .map(|(id, po)| (*id, *po))
                    .collect();
                candidates.push(Witness::Renaming {
                    profile: p.clone(),
                    renamed: Profile::new(voters)?,
                });
            }
        }
        Axiom::Neutrality => {
            for p in &cfg.seed_profiles {
                for sigma in Permutation::all(cfg.m) {
                    candidates.push(Witness::Relabeling {
                        profile: p.clone(),
                        sigma,
                    });
                }
            }
        }
        _ => {}
    }
    let tried = candidates.len() as u64;
    for w in candidates {
        if w.violates(axiom, rule)? {
            return Ok(Some(finish(axiom, cfg, tried, Some(w))));
        }
    }
    Ok(None)
}

/// Runs the checker for `axiom`.
pub fn check(rule: &dyn VotingRule, axiom: Axiom, cfg: &CheckConfig) -> Result<CheckResult> {
    let space = Space::new(cfg)?;
    if let Some(result) = try_seeds(axiom, rule, cfg)? {
        return Ok(result);
    }
    match axiom {
        Axiom::Anonymity => anonymity(rule, cfg, &space),
        Axiom::Neutrality => neutrality(rule, cfg, &space),
        Axiom::Reinforcement => reinforcement(rule, cfg, &space),
        Axiom::Continuity => continuity(rule, cfg, &space),
        Axiom::PartialFaithfulness
        | Axiom::Faithfulness
        | Axiom::PartialAverseness
        | Axiom::Averseness => single_voter(rule, axiom, cfg, &space),
        Axiom::TCongruity | Axiom::BCongruity => congruity(rule, axiom, cfg, &space),
        Axiom::Contraction
        | Axiom::StrongContraction
        | Axiom::Expansion
        | Axiom::StrongExpansion => replacement(rule, axiom, cfg, &space),
        Axiom::TopsOnly | Axiom::BottomsOnly => sets_only(rule, axiom, cfg, &space),
    }
}

pub fn check_anonymity(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::Anonymity, cfg)
}

pub fn check_neutrality(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::Neutrality, cfg)
}

pub fn check_reinforcement(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::Reinforcement, cfg)
}

pub fn check_continuity(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::Continuity, cfg)
}

pub fn check_faithfulness(
    rule: &dyn VotingRule,
    cfg: &CheckConfig,
    partial: bool,
) -> Result<CheckResult> {
    let axiom = if partial {
        Axiom::PartialFaithfulness
    } else {
        Axiom::Faithfulness
    };
    check(rule, axiom, cfg)
}

pub fn check_averseness(
    rule: &dyn VotingRule,
    cfg: &CheckConfig,
    partial: bool,
) -> Result<CheckResult> {
    let axiom = if partial {
        Axiom::PartialAverseness
    } else {
        Axiom::Averseness
    };
    check(rule, axiom, cfg)
}

pub fn check_t_congruity(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::TCongruity, cfg)
}

pub fn check_b_congruity(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::BCongruity, cfg)
}

pub fn check_contraction(
    rule: &dyn VotingRule,
    cfg: &CheckConfig,
    strong: bool,
) -> Result<CheckResult> {
    let axiom = if strong {
        Axiom::StrongContraction
    } else {
        Axiom::Contraction
    };
    check(rule, axiom, cfg)
}

pub fn check_expansion(
    rule: &dyn VotingRule,
    cfg: &CheckConfig,
    strong: bool,
) -> Result<CheckResult> {
    let axiom = if strong {
        Axiom::StrongExpansion
    } else {
        Axiom::Expansion
    };
    check(rule, axiom, cfg)
}

pub fn check_tops_only(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::TopsOnly, cfg)
}

pub fn check_bottoms_only(rule: &dyn VotingRule, cfg: &CheckConfig) -> Result<CheckResult> {
    check(rule, Axiom::BottomsOnly, cfg)
}

/// Results of every checker, in [`Axiom::ALL`] order, with the axioms that
/// could not be checked listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<CheckResult>,
    pub errors: Vec<(Axiom, Error)>,
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

pub fn check_all(rule: &dyn VotingRule, cfg: &CheckConfig) -> AxiomReport {
    check_many(rule, &Axiom::ALL, cfg)
}

pub fn check_many(rule: &dyn VotingRule, axioms: &[Axiom], cfg: &CheckConfig) -> AxiomReport {
    let mut report = AxiomReport {
        results: Vec::new(),
        errors: Vec::new(),
    };
    for &axiom in axioms {
        match check(rule, axiom, cfg) {
            Ok(r) => report.results.push(r),
            Err(e) => report.errors.push((axiom, e)),
        }
    }
    report
}

/// False exactly when `premise` passes and `conclusion` fails at these bounds.
pub fn cross_check_implication(
    rule: &dyn VotingRule,
    cfg: &CheckConfig,
    premise: Axiom,
    conclusion: Axiom,
) -> Result<bool> {
    let p = check(rule, premise, cfg)?;
    if !p.verdict.is_pass() {
        return Ok(true);
    }
    Ok(!check(rule, conclusion, cfg)?.verdict.is_fail())
}

fn anonymity(rule: &dyn VotingRule, cfg: &CheckConfig, space: &Space) -> Result<CheckResult> {
    let pool = cfg.max_voters as u32 + 2;
    let injections: Vec<Vec<Vec<u32>>> = (0..=cfg.max_voters)
        .map(|n| {
            (1..=pool)
                .permutations(n)
                .filter(|ids| ids.iter().enumerate().any(|(i, &id)| id != i as u32 + 1))
                .collect()
        })
        .collect();
    let per_profile = injections[cfg.max_voters].len() as u64;
    space.budget(
        "anonymity instances",
        per_profile.saturating_mul(space.len() as u64),
    )?;
    let base = space.winners(rule, 1)?;
    let (count, witness) = scan(space, space.len(), |i| {
        let profile = space.profile(i, 1);
        let mut count = 0;
        for ids in &injections[space.voters(i)] {
            count += 1;
            let voters = ids
                .iter()
                .zip(profile.orders())
                .map(|(&id, po)| (VoterId(id), *po))
                .collect();
            let renamed = Profile::new(voters)?;
            if rule.winners(&renamed)? != base[i] {
                return Ok((count, Some(Witness::Renaming { profile, renamed })));
            }
        }
        Ok((count, None))
    })?;
    Ok(finish(Axiom::Anonymity, cfg, count, witness))
}

fn neutrality(rule: &dyn VotingRule, cfg: &CheckConfig, space: &Space) -> Result<CheckResult> {
    let perms: Vec<Permutation> = Permutation::all(cfg.m).into_iter().skip(1).collect();
    space.budget(
        "neutrality instances",
        (perms.len() as u64).saturating_mul(space.len() as u64),
    )?;
    let base = space.winners(rule, 1)?;
    let (count, witness) = scan(space, space.len(), |i| {
        let profile = space.profile(i, 1);
        let mut count = 0;
        for sigma in &perms {
            count += 1;
            let after = rule.winners(&profile.relabel(sigma))?;
            if neutrality_violation(sigma, base[i], after) {
                return Ok((
                    count,
                    Some(Witness::Relabeling {
                        profile,
                        sigma: sigma.clone(),
                    }),
                ));
            }
        }
        Ok((count, None))
    })?;
    Ok(finish(Axiom::Neutrality, cfg, count, witness))
}

fn pair_budget(space: &Space, what: &'static str) -> Result<()> {
    let n = space.len() as u64;
    space.budget(what, n.saturating_mul(n))
}

fn reinforcement(rule: &dyn VotingRule, cfg: &CheckConfig, space: &Space) -> Result<CheckResult> {
    pair_budget(space, "reinforcement instances")?;
    let tables = space.offset_winners(rule, cfg.max_voters)?;
    let (count, witness) = scan(space, space.len(), |i| {
        let n1 = space.voters(i);
        let mut count = 0;
        for j in 0..space.len() {
            let f1 = tables[0][i];
            let f2 = tables[n1][j];
            count += 1;
            if f1.is_disjoint(f2) {
                continue;
            }
            let (first, second) = space.pair(i, j);
            let joint = rule.winners(&first.concat(&second)?)?;
            if reinforcement_violation(f1, f2, joint) == Some(true) {
                return Ok((count, Some(Witness::Split { first, second })));
            }
        }
        Ok((count, None))
    })?;
    Ok(finish(Axiom::Reinforcement, cfg, count, witness))
}

fn continuity(rule: &dyn VotingRule, cfg: &CheckConfig, space: &Space) -> Result<CheckResult> {
    pair_budget(space, "continuity instances")?;
    let search = cfg.search();
    // (pairs, first violation, unresolved pairs, first unresolved, largest bound)
    type ContinuityRow = (u64, Option<Witness>, u64, Option<(usize, usize)>, u64);
    let rows: Vec<ContinuityRow> = par::try_map_indexed(space.len(), space.parallel, |i| {
        let mut row: ContinuityRow = (0, None, 0, None, 0);
        for j in 0..space.len() {
            row.0 += 1;
            let (first, second) = space.pair(i, j);
            match analyze_pair(rule, &first, &second, search)? {
                PairOutcome::Bound(k) => row.4 = row.4.max(k),
                PairOutcome::Violated(certificate) => {
                    row.1 = Some(Witness::Continuity {
                        first,
                        second,
                        certificate,
                    });
                    break;
                }
                PairOutcome::Unresolved => {
                    row.2 += 1;
                    row.3.get_or_insert((i, j));
                }
            }
        }
        Ok(row)
    })?;

    let instances = rows.iter().map(|r| r.0).sum();
    let bound = rows.iter().map(|r| r.4).max();
    if let Some(w) = rows.iter().find_map(|r| r.1.clone()) {
        return Ok(finish(Axiom::Continuity, cfg, instances, Some(w)));
    }
    let unresolved: u64 = rows.iter().map(|r| r.2).sum();
    if unresolved > 0 {
        let (i, j) = rows.iter().find_map(|r| r.3).unwrap_or_default();
        return Ok(CheckResult {
            axiom: Axiom::Continuity,
            verdict: Verdict::Inconclusive(format!(
                "{unresolved} pair(s) without a bound up to k = {} or a refutation; first is profile {i} with profile {j}",
                cfg.k_max
            )),
            instances_checked: instances,
            bounds: cfg.bounds(),
            continuity_bound: bound,
        });
    }
    let mut result = finish(Axiom::Continuity, cfg, instances, None);
    result.continuity_bound = bound;
    Ok(result)
}

fn single_voter(
    rule: &dyn VotingRule,
    axiom: Axiom,
    cfg: &CheckConfig,
    space: &Space,
) -> Result<CheckResult> {
    let d = space.orders.len();
    let (count, witness) = scan(space, d, |i| {
        let profile = space.profile(i, 1);
        let order = space.order(i, 0);
        let winners = rule.winners(&profile)?;
        Ok(match single_voter_violation(axiom, order, winners) {
            None | Some(false) => (1, None),
            Some(true) => (1, Some(Witness::SingleVoter { profile })),
        })
    })?;
    Ok(finish(axiom, cfg, count, witness))
}

fn congruity(
    rule: &dyn VotingRule,
    axiom: Axiom,
    cfg: &CheckConfig,
    space: &Space,
) -> Result<CheckResult> {
    pair_budget(space, "congruity instances")?;
    let tables = space.offset_winners(rule, cfg.max_voters)?;
    let covers: Vec<AltSet> = (0..space.len())
        .map(|j| {
            (0..space.voters(j))
                .map(|p| {
                    let o = space.order(j, p);
                    if axiom == Axiom::TCongruity {
                        o.top()
                    } else {
                        o.bottom()
                    }
                })
                .fold(AltSet::EMPTY, AltSet::union)
        })
        .collect();
    let (count, witness) = scan(space, space.len(), |i| {
        let f1 = tables[0][i];
        let mut count = 0;
        for (j, &cover) in covers.iter().enumerate() {
            count += cfg.m as u64;
            let candidates: Vec<Alternative> = (0..cfg.m)
                .map(|x| Alternative(x as u8))
                .filter(|&x| {
                    congruity_violation_with_cover(axiom, x, f1, cover, AltSet::EMPTY).is_some()
                })
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let (first, second) = space.pair(i, j);
            debug_assert_eq!(congruity_cover(axiom, &second), cover);
            let joint = rule.winners(&first.concat(&second)?)?;
            for x in candidates {
                if congruity_violation_with_cover(axiom, x, f1, cover, joint) == Some(true) {
                    return Ok((count, Some(Witness::Congruity { first, second, x })));
                }
            }
        }
        Ok((count, None))
    })?;
    Ok(finish(axiom, cfg, count, witness))
}

fn replacement(
    rule: &dyn VotingRule,
    axiom: Axiom,
    cfg: &CheckConfig,
    space: &Space,
) -> Result<CheckResult> {
    let per_profile = (cfg.max_voters as u64).saturating_mul(space.orders.len() as u64);
    space.budget(
        "replacement instances",
        per_profile.saturating_mul(space.len() as u64),
    )?;
    let base = space.winners(rule, 1)?;
    let (count, witness) = scan(space, space.len(), |i| {
        let profile = space.profile(i, 1);
        let mut count = 0;
        for (voter, original) in profile.voters() {
            for replacement in &space.orders {
                count += 1;
                if replacement_violation(axiom, original, replacement, base[i], AltSet::EMPTY)
                    .is_none()
                {
                    continue;
                }
                let after = rule.winners(&profile.replace(*voter, *replacement)?)?;
                if replacement_violation(axiom, original, replacement, base[i], after) == Some(true)
                {
                    let voter = *voter;
                    return Ok((
                        count,
                        Some(Witness::Replacement {
                            profile,
                            voter,
                            replacement: *replacement,
                        }),
                    ));
                }
            }
        }
        Ok((count, None))
    })?;
    Ok(finish(axiom, cfg, count, witness))
}

fn sets_only(
    rule: &dyn VotingRule,
    axiom: Axiom,
    cfg: &CheckConfig,
    space: &Space,
) -> Result<CheckResult> {
    let key = |o: &PartialOrder| {
        if axiom == Axiom::TopsOnly {
            o.top()
        } else {
            o.bottom()
        }
    };
    // orders sharing each order's top (bottom) set, in index order
    let classes: Vec<Vec<u16>> = space
        .orders
        .iter()
        .map(|o| {
            (0..space.orders.len() as u16)
                .filter(|&j| key(&space.orders[j as usize]) == key(o))
                .collect()
        })
        .collect();
    let base = space.winners(rule, 1)?;
    let (count, witness) = scan(space, space.len(), |i| {
        let digits = &space.profiles[i];
        let mut count = 0;
        let choices = digits.iter().map(|&o| classes[o as usize].iter().copied());
        for other in choices.multi_cartesian_product() {
            let j = space.index_of(&other);
            if j < i {
                continue;
            }
            count += 1;
            if base[i] != base[j] {
                let (first, second) = (space.profile(i, 1), space.profile(j, 1));
                debug_assert!(same_sets(axiom, &first, &second));
                return Ok((count, Some(Witness::SameSets { first, second })));
            }
        }
        Ok((count, None))
    })?;
    Ok(finish(axiom, cfg, count, witness))
}
