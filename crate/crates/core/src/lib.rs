//! Voting rules for strict partial-order preferences.
//!
//! The crate covers the plurality and anti-plurality families of positional
//! scoring rules for partial orders, the counterexample rules that separate
//! their characterizing axioms, and an exhaustive checker that verifies or
//! refutes each axiom on bounded universes.

pub mod axioms;
pub mod error;
pub mod io;
pub mod par;
pub mod preference;
pub mod rules;
pub mod scoring;

pub use error::{Error, Result};
