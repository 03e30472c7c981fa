//! Positional scoring functions and their classification.
//!
//! Scores are exact rationals; nothing in winner determination touches
//! floating point.

mod classify;

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::preference::{AltSet, Alternative, PartialOrder};

pub use classify::{classify, is_positional, tabulate, ClassMembership, ScoringTable};

/// An exact rational score.
pub type Score = Rational64;

/// Renders a score as `p/q` with a positive denominator, `2/1` for integers.
pub fn format_score(score: &Score) -> String {
    format!("{}/{}", score.numer(), score.denom())
}

/// Which end of a preference a rule looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    /// The top or bottom set of `order`.
    pub fn set_of(self, order: &PartialOrder) -> AltSet {
        match self {
            Side::Top => order.top(),
            Side::Bottom => order.bottom(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
        }
    }
}

/// Maps a preference and an alternative to a score.
///
/// Implementations must be pure. Positionality (invariance under relabeling)
/// is a property checked by [`is_positional`], not assumed.
pub trait ScoringFunction: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score;

    /// Universe size the function is defined for, if it is tied to one.
    fn arity(&self) -> Option<usize> {
        None
    }

    fn scores(&self, order: &PartialOrder) -> Vec<Score> {
        (0..order.m())
            .map(|a| self.score(order, Alternative(a as u8)))
            .collect()
    }
}

fn indicator(hit: bool) -> Score {
    if hit {
        Score::one()
    } else {
        Score::zero()
    }
}

/// 1 for every top alternative, 0 otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformPlurality;

impl ScoringFunction for UniformPlurality {
    fn name(&self) -> String {
        "uniform-plurality".into()
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        indicator(order.top().contains(a))
    }
}

/// -1 for every bottom alternative, 0 otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformAntiPlurality;

impl ScoringFunction for UniformAntiPlurality {
    fn name(&self) -> String {
        "uniform-anti-plurality".into()
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        -indicator(order.bottom().contains(a))
    }
}

/// A top alternative scores the number of alternatives it dominates; every
/// other alternative scores 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct DominancePlurality;

impl ScoringFunction for DominancePlurality {
    fn name(&self) -> String {
        "dominance-plurality".into()
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        if order.top().contains(a) {
            Score::from_integer(order.dominance_count(a) as i64)
        } else {
            Score::zero()
        }
    }
}

/// Every alternative scores the number of alternatives it dominates.
#[derive(Debug, Clone, Copy, Default)]
pub struct BordaDominance;

impl ScoringFunction for BordaDominance {
    fn name(&self) -> String {
        "borda".into()
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        Score::from_integer(order.dominance_count(a) as i64)
    }
}

// Weights indexed by set size 1..=m: non-increasing, positive except possibly
// the last.
fn validate_weights(weights: &[Score]) -> Result<()> {
    let m = weights.len();
    if m == 0 {
        return Err(Error::Weight("at least one weight is required".into()));
    }
    if let Some(i) = weights.windows(2).position(|w| w[0] < w[1]) {
        return Err(Error::Weight(format!(
            "weights must be non-increasing, but w({}) < w({})",
            i + 1,
            i + 2
        )));
    }
    if let Some(i) = weights[..m - 1].iter().position(|w| *w <= Score::zero()) {
        return Err(Error::Weight(format!("w({}) must be positive", i + 1)));
    }
    if weights[m - 1] < Score::zero() {
        return Err(Error::Weight(format!("w({m}) must be non-negative")));
    }
    Ok(())
}

fn weight_for(weights: &[Score], size: usize) -> Score {
    weights[size.clamp(1, weights.len()) - 1]
}

fn weight_list(weights: &[Score]) -> String {
    weights
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A top alternative scores `w(|T|)`; others score 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeApproval {
    weights: Vec<Score>,
}

impl SizeApproval {
    /// One weight per possible top size `1..=m`.
    pub fn new(weights: Vec<Score>) -> Result<SizeApproval> {
        validate_weights(&weights)?;
        Ok(SizeApproval { weights })
    }

    pub fn weights(&self) -> &[Score] {
        &self.weights
    }
}

impl ScoringFunction for SizeApproval {
    fn name(&self) -> String {
        format!("size-approval:{}", weight_list(&self.weights))
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        let top = order.top();
        if top.contains(a) {
            weight_for(&self.weights, top.len())
        } else {
            Score::zero()
        }
    }

    fn arity(&self) -> Option<usize> {
        Some(self.weights.len())
    }
}

/// A bottom alternative scores `-v(|B|)`; others score 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiSizeApproval {
    weights: Vec<Score>,
}

impl AntiSizeApproval {
    /// One weight per possible bottom size `1..=m`.
    pub fn new(weights: Vec<Score>) -> Result<AntiSizeApproval> {
        validate_weights(&weights)?;
        Ok(AntiSizeApproval { weights })
    }

    pub fn weights(&self) -> &[Score] {
        &self.weights
    }
}

impl ScoringFunction for AntiSizeApproval {
    fn name(&self) -> String {
        format!("anti-size:{}", weight_list(&self.weights))
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        let bottom = order.bottom();
        if bottom.contains(a) {
            -weight_for(&self.weights, bottom.len())
        } else {
            Score::zero()
        }
    }

    fn arity(&self) -> Option<usize> {
        Some(self.weights.len())
    }
}

/// `x ↦ αx + β` applied to every score of `inner`.
#[derive(Debug, Clone)]
pub struct Affine {
    inner: Arc<dyn ScoringFunction>,
    alpha: Score,
    beta: Score,
}

impl Affine {
    pub fn new(inner: Arc<dyn ScoringFunction>, alpha: Score, beta: Score) -> Result<Affine> {
        if alpha <= Score::zero() {
            return Err(Error::Alpha);
        }
        Ok(Affine { inner, alpha, beta })
    }
}

impl ScoringFunction for Affine {
    fn name(&self) -> String {
        format!("affine({},{},{})", self.inner.name(), self.alpha, self.beta)
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        self.alpha * self.inner.score(order, a) + self.beta
    }

    fn arity(&self) -> Option<usize> {
        self.inner.arity()
    }
}

/// Uniform (anti-)plurality scores with one fixed alternative's score doubled.
/// Not positional.
#[derive(Debug, Clone, Copy)]
pub struct DoubledAlternative {
    pub favoured: Alternative,
    pub side: Side,
}

impl ScoringFunction for DoubledAlternative {
    fn name(&self) -> String {
        format!("double:{}-{}", self.favoured.0, self.side.name())
    }

    fn score(&self, order: &PartialOrder, a: Alternative) -> Score {
        let base = match self.side {
            Side::Top => UniformPlurality.score(order, a),
            Side::Bottom => UniformAntiPlurality.score(order, a),
        };
        if a == self.favoured {
            base * 2
        } else {
            base
        }
    }
}
