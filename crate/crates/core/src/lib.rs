//! Exact-arithmetic engine for finite causal spaces.
//!
//! A causal space couples an ordered sequence of novel events over a finite
//! universe with a causal function giving, level by level, the probability of
//! each event conditional on every atom of its predecessors' algebra. That
//! structure induces a unique belief over the final algebra, and because the
//! mechanism (the causal function) is kept separate from the beliefs it
//! induces, interventions are a first-class, purely syntactic operation on
//! the table.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: universes, events as bitsets, partitions/atom sets, and
//!   the three-valued truth function;
//! - [`rational`]: exact probabilities plus the few float conversions;
//! - [`space`]: primitive sequences, causal tables, atom masses, and
//!   interventions;
//! - [`belief`]: induced beliefs, conditioning (including exact conditioning
//!   on zero-mass path atoms), Bayesian updating, log-space diagnostics;
//! - [`oracle`]: independent brute-force recomputations for testing;
//! - [`dsl`]: a small text format for models and queries, with
//!   position-carrying errors, plus canonical rendering.
//!
//! All probability arithmetic is `BigRational`-exact; floating point appears
//! only in the log-space diagnostics and in display formatting.

// Errors carry the offending `Event` and the exact values involved; these
// paths are cold and the payloads are what make the diagnostics usable.
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod belief;
pub mod dsl;
pub mod oracle;
pub mod rational;
pub mod space;

use thiserror::Error;

pub use algebra::{
    AlgebraError, DEFAULT_MAX_OUTCOMES, Event, Partition, TruthValue, Universe, algebra_contains,
    generate_atoms, truth,
};
pub use belief::{BeliefError, DiagnosticsReport, HypothesisSet, PosteriorVector};
pub use dsl::{ErrorClass, SourceError};
pub use oracle::{JointTable, OracleError, oracle_belief, oracle_joint};
pub use rational::{Rational, rational};
pub use space::{
    CausalSpace, CausalTable, CauseEntry, DEFAULT_MAX_EVENTS, Literal, PrimitiveSequence,
    SpaceError,
};

/// Any error the crate can produce, for callers that funnel the layers
/// together (the DSL evaluator and the CLI do).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Belief(#[from] BeliefError),
    #[error(transparent)]
    Source(#[from] SourceError),
}

/// Resource caps applied when elaborating untrusted model text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_outcomes: usize,
    pub max_events: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_outcomes: DEFAULT_MAX_OUTCOMES,
            max_events: DEFAULT_MAX_EVENTS,
        }
    }
}
