//! Alternatives, strict partial orders, profiles, and the structural
//! operations on them.

mod alt;
mod enumerate;
mod order;
mod profile;

pub use alt::{AltSet, Alternative, Universe, MAX_ALTERNATIVES};
pub use enumerate::{enumerate_partial_orders, enumerate_with, Limits, MAX_M_ENV};
pub use order::{approval_ballot, BallotKind, PartialOrder, Permutation};
pub use profile::{Profile, VoterId};
