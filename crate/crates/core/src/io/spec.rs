use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::error::Error;
use crate::preference::Universe;
use crate::rules::{
    BiasedAlternative, FullSet, RunnerUp, ScoringRule, StandardApproval, TwoStep, VoterPrivilege,
    VotingRule,
};
use crate::scoring::{
    AntiSizeApproval, BordaDominance, DominancePlurality, Score, Side, SizeApproval,
    UniformAntiPlurality, UniformPlurality,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("unrecognized rule spec `{0}`")]
    Grammar(String),

    #[error("bad weight `{0}`: expected an integer or p/q")]
    Number(String),

    #[error("unknown alternative `{0}` in rule spec")]
    UnknownLabel(String),

    #[error(transparent)]
    Rule(#[from] Error),
}

/// A parsed rule specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleSpec {
    UniformPlurality,
    UniformAntiPlurality,
    DominancePlurality,
    Borda,
    SizeApproval(Vec<Score>),
    AntiSize(Vec<Score>),
    FullSet,
    TwoStep(Side),
    RunnerUp(Side),
    Double { label: String, side: Side },
    VoterPrivilege(Side),
    Approval,
}

fn weights(list: &str) -> Result<Vec<Score>, SpecError> {
    list.split(',')
        .map(|w| {
            let w = w.trim();
            Score::from_str(w).map_err(|_| SpecError::Number(w.to_string()))
        })
        .collect()
}

impl FromStr for RuleSpec {
    type Err = SpecError;

    /// Grammar: `uniform-plurality | uniform-anti-plurality |
    /// dominance-plurality | borda | size-approval:<w1,...,wm> |
    /// anti-size:<v1,...,vm> | full-set | two-step-top | two-step-bottom |
    /// runner-up-plurality | runner-up-anti-plurality |
    /// double:<label>[-top|-bottom] | voter1-top | voter1-bottom | approval`.
    /// Weights are validated here; their count is checked against the
    /// universe on [`RuleSpec::resolve`].
    fn from_str(spec: &str) -> Result<RuleSpec, SpecError> {
        let spec = spec.trim();
        let parsed = match spec {
            "uniform-plurality" => RuleSpec::UniformPlurality,
            "uniform-anti-plurality" => RuleSpec::UniformAntiPlurality,
            "dominance-plurality" => RuleSpec::DominancePlurality,
            "borda" => RuleSpec::Borda,
            "full-set" => RuleSpec::FullSet,
            "two-step-top" => RuleSpec::TwoStep(Side::Top),
            "two-step-bottom" => RuleSpec::TwoStep(Side::Bottom),
            "runner-up-plurality" => RuleSpec::RunnerUp(Side::Top),
            "runner-up-anti-plurality" => RuleSpec::RunnerUp(Side::Bottom),
            "voter1-top" => RuleSpec::VoterPrivilege(Side::Top),
            "voter1-bottom" => RuleSpec::VoterPrivilege(Side::Bottom),
            "approval" => RuleSpec::Approval,
            _ => {
                if let Some(list) = spec.strip_prefix("size-approval:") {
                    let w = weights(list)?;
                    SizeApproval::new(w.clone())?;
                    RuleSpec::SizeApproval(w)
                } else if let Some(list) = spec.strip_prefix("anti-size:") {
                    let w = weights(list)?;
                    AntiSizeApproval::new(w.clone())?;
                    RuleSpec::AntiSize(w)
                } else if let Some(rest) = spec.strip_prefix("double:") {
                    let (label, side) = if let Some(l) = rest.strip_suffix("-bottom") {
                        (l, Side::Bottom)
                    } else if let Some(l) = rest.strip_suffix("-top") {
                        (l, Side::Top)
                    } else {
                        (rest, Side::Top)
                    };
                    if label.is_empty() || label.chars().any(char::is_whitespace) {
                        return Err(SpecError::Grammar(spec.to_string()));
                    }
                    RuleSpec::Double {
                        label: label.to_string(),
                        side,
                    }
                } else {
                    return Err(SpecError::Grammar(spec.to_string()));
                }
            }
        };
        Ok(parsed)
    }
}

fn weight_list(w: &[Score]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::UniformPlurality => f.write_str("uniform-plurality"),
            RuleSpec::UniformAntiPlurality => f.write_str("uniform-anti-plurality"),
            RuleSpec::DominancePlurality => f.write_str("dominance-plurality"),
            RuleSpec::Borda => f.write_str("borda"),
            RuleSpec::SizeApproval(w) => write!(f, "size-approval:{}", weight_list(w)),
            RuleSpec::AntiSize(w) => write!(f, "anti-size:{}", weight_list(w)),
            RuleSpec::FullSet => f.write_str("full-set"),
            RuleSpec::TwoStep(side) => write!(f, "two-step-{}", side.name()),
            RuleSpec::RunnerUp(Side::Top) => f.write_str("runner-up-plurality"),
            RuleSpec::RunnerUp(Side::Bottom) => f.write_str("runner-up-anti-plurality"),
            RuleSpec::Double { label, side } => write!(f, "double:{label}-{}", side.name()),
            RuleSpec::VoterPrivilege(side) => write!(f, "voter1-{}", side.name()),
            RuleSpec::Approval => f.write_str("approval"),
        }
    }
}

impl RuleSpec {
    /// The rule over `universe`.
    pub fn resolve(&self, universe: &Universe) -> Result<Box<dyn VotingRule>, SpecError> {
        let m = universe.m();
        let arity = |w: &[Score]| {
            if w.len() == m {
                Ok(())
            } else {
                Err(SpecError::Rule(Error::Arity {
                    expected: m,
                    found: w.len(),
                }))
            }
        };
        Ok(match self {
            RuleSpec::UniformPlurality => Box::new(ScoringRule::new(Arc::new(UniformPlurality))),
            RuleSpec::UniformAntiPlurality => {
                Box::new(ScoringRule::new(Arc::new(UniformAntiPlurality)))
            }
            RuleSpec::DominancePlurality => {
                Box::new(ScoringRule::new(Arc::new(DominancePlurality)))
            }
            RuleSpec::Borda => Box::new(ScoringRule::new(Arc::new(BordaDominance))),
            RuleSpec::SizeApproval(w) => {
                arity(w)?;
                Box::new(ScoringRule::new(Arc::new(SizeApproval::new(w.clone())?)))
            }
            RuleSpec::AntiSize(w) => {
                arity(w)?;
                Box::new(ScoringRule::new(Arc::new(AntiSizeApproval::new(
                    w.clone(),
                )?)))
            }
            RuleSpec::FullSet => Box::new(FullSet),
            RuleSpec::TwoStep(side) => Box::new(TwoStep { side: *side }),
            RuleSpec::RunnerUp(side) => Box::new(RunnerUp { side: *side }),
            RuleSpec::Double { label, side } => {
                let a = universe
                    .find(label)
                    .ok_or_else(|| SpecError::UnknownLabel(label.clone()))?;
                Box::new(BiasedAlternative::labelled(a, *side, label.clone()))
            }
            RuleSpec::VoterPrivilege(side) => Box::new(VoterPrivilege { side: *side }),
            RuleSpec::Approval => Box::new(StandardApproval),
        })
    }
}

/// Parses and resolves `spec` over `universe`.
pub fn parse_rule_spec(spec: &str, universe: &Universe) -> Result<Box<dyn VotingRule>, SpecError> {
    spec.parse::<RuleSpec>()?.resolve(universe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trips() {
        for spec in [
            "uniform-plurality",
            "uniform-anti-plurality",
            "dominance-plurality",
            "borda",
            "size-approval:3,2,1",
            "anti-size:1/2,1/3,0",
            "full-set",
            "two-step-top",
            "two-step-bottom",
            "runner-up-plurality",
            "runner-up-anti-plurality",
            "double:a-top",
            "double:b-bottom",
            "voter1-top",
            "voter1-bottom",
            "approval",
        ] {
            let parsed: RuleSpec = spec.parse().unwrap();
            assert_eq!(parsed.to_string(), spec);
            let rule = parsed.resolve(&Universe::standard(3)).unwrap();
            assert!(!rule.name().is_empty());
        }
        assert_eq!(
            "double:c".parse::<RuleSpec>().unwrap().to_string(),
            "double:c-top"
        );
    }

    #[test]
    fn weight_errors() {
        assert!(matches!(
            "size-approval:1,2,3".parse::<RuleSpec>(),
            Err(SpecError::Rule(Error::Weight(_)))
        ));
        assert!(matches!(
            "size-approval:3,x,1".parse::<RuleSpec>(),
            Err(SpecError::Number(_))
        ));
        let four = "size-approval:3,2,1".parse::<RuleSpec>().unwrap();
        assert!(matches!(
            four.resolve(&Universe::standard(4)),
            Err(SpecError::Rule(Error::Arity {
                expected: 4,
                found: 3
            }))
        ));
    }

    #[test]
    fn unknown_names_and_labels() {
        assert!(matches!(
            "plurality".parse::<RuleSpec>(),
            Err(SpecError::Grammar(_))
        ));
        assert!(matches!(
            parse_rule_spec("double:z-top", &Universe::standard(3)),
            Err(SpecError::UnknownLabel(_))
        ));
    }
}
