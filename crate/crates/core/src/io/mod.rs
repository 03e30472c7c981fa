//! Ballot files, rule specs and JSON reports.

mod ballots;
mod report;
mod spec;

pub use ballots::{format_ballot, format_ballots, parse_ballots, BallotDocument, ParseError, Span};
pub use report::{
    check_report, classify_report, compute_report, enumerate_report, result_json, scores_json,
    serialize_report, set_json, witness_json,
};
pub use spec::{parse_rule_spec, RuleSpec, SpecError};
