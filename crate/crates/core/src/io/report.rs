use serde_json::{json, Map, Value};

use super::ballots::{format_ballot, format_ballots};
use crate::axioms::{AxiomReport, CheckResult, Verdict, Witness};
use crate::error::Result;
use crate::preference::{AltSet, PartialOrder, Profile, Universe};
use crate::rules::{ScoreBoard, VotingRule};
use crate::scoring::{format_score, ClassMembership, Score};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn serialize_report(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    out.push('\n');
    out
}

pub fn set_json(universe: &Universe, set: AltSet) -> Value {
    json!(universe.set_labels(set))
}

/// `{label: "p/q"}` for every alternative.
pub fn scores_json(universe: &Universe, totals: &[Score]) -> Value {
    let map: Map<String, Value> = universe
        .labels()
        .iter()
        .zip(totals)
        .map(|(label, s)| (label.clone(), Value::String(format_score(s))))
        .collect();
    Value::Object(map)
}

/// Winners of `profile`, plus per-alternative totals when the rule is
/// additive (`null` otherwise).
pub fn compute_report(
    universe: &Universe,
    rule: &dyn VotingRule,
    profile: &Profile,
) -> Result<Value> {
    let winners = rule.winners(profile)?;
    let scores = match rule.additive() {
        Some(score) => scores_json(universe, ScoreBoard::tally(score, profile).totals()),
        None => Value::Null,
    };
    Ok(json!({
        "rule": rule.name(),
        "voters": profile.len(),
        "winners": set_json(universe, winners),
        "scores": scores,
    }))
}

pub fn witness_json(universe: &Universe, witness: &Witness) -> Value {
    let profiles: Map<String, Value> = witness
        .profiles()
        .into_iter()
        .map(|(name, p)| {
            (
                name.to_string(),
                Value::String(format_ballots(universe, &p)),
            )
        })
        .collect();
    let mut out = Map::new();
    out.insert("kind".into(), json!(witness.kind()));
    out.insert("profiles".into(), Value::Object(profiles));
    match witness {
        Witness::Relabeling { sigma, .. } => {
            let map: Map<String, Value> = universe
                .labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), json!(universe.labels()[sigma.apply_index(i)])))
                .collect();
            out.insert("sigma".into(), Value::Object(map));
        }
        Witness::Continuity { certificate, .. } => {
            out.insert(
                "certificate".into(),
                json!({
                    "kind": certificate.kind.name(),
                    "from_k": certificate.from_k,
                    "window": certificate.window,
                    "eventual": set_json(universe, certificate.eventual),
                }),
            );
        }
        Witness::Congruity { x, .. } => {
            out.insert("x".into(), json!(universe.label(*x)));
        }
        Witness::Replacement {
            voter, replacement, ..
        } => {
            out.insert("voter".into(), json!(voter.0));
            out.insert(
                "replacement".into(),
                json!(format_ballot(universe, replacement)),
            );
        }
        _ => {}
    }
    Value::Object(out)
}

pub fn result_json(universe: &Universe, result: &CheckResult) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), json!(result.verdict.name()));
    out.insert("instances_checked".into(), json!(result.instances_checked));
    if let Some(k) = result.continuity_bound {
        out.insert("continuity_bound".into(), json!(k));
    }
    match &result.verdict {
        Verdict::Fail(w) => {
            out.insert("witness".into(), witness_json(universe, w));
        }
        Verdict::Inconclusive(reason) => {
            out.insert("reason".into(), json!(reason));
        }
        Verdict::Pass => {}
    }
    Value::Object(out)
}

/// Report of a checker run over the standard universe of the bounds.
pub fn check_report(universe: &Universe, rule_name: &str, report: &AxiomReport) -> Value {
    let results: Map<String, Value> = report
        .results
        .iter()
        .map(|r| (r.axiom.id().to_string(), result_json(universe, r)))
        .collect();
    let errors: Map<String, Value> = report
        .errors
        .iter()
        .map(|(a, e)| (a.id().to_string(), json!(e.to_string())))
        .collect();
    let bounds = report.results.first().map(|r| {
        json!({
            "m": r.bounds.m,
            "max_voters": r.bounds.max_voters,
            "domain": r.bounds.domain.id(),
        })
    });
    json!({
        "rule": rule_name,
        "bounds": bounds,
        "results": results,
        "errors": errors,
    })
}

/// The eight class flags as an array in their fixed order.
pub fn classify_report(
    rule_name: &str,
    m: usize,
    membership: &ClassMembership,
    positional: bool,
) -> Value {
    let flags: Vec<Value> = membership
        .flags()
        .iter()
        .map(|(name, value)| json!({ "class": name, "member": value }))
        .collect();
    json!({
        "rule": rule_name,
        "m": m,
        "positional": positional,
        "flags": flags,
    })
}

pub fn enumerate_report(universe: &Universe, orders: &[PartialOrder], count_only: bool) -> Value {
    let mut out = json!({ "m": universe.m(), "count": orders.len() });
    if !count_only {
        let listed: Vec<Value> = orders
            .iter()
            .map(|o| json!(format_ballot(universe, o)))
            .collect();
        out["orders"] = Value::Array(listed);
    }
    out
}
