//! Brute-force reference implementations for cross-checking the engine.
//!
//! Everything here recomputes results from first principles — full subset
//! scans over every level's atom set, masses tabulated eagerly, beliefs as
//! plain ratios of tabulated masses — and deliberately shares none of the
//! engine's traversal shortcuts (witness outcomes, owner indices, chain
//! re-rooting). Slow on purpose; used by the test suite.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Event, Universe};
use crate::rational::Rational;
use crate::space::CausalSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("event {event} is not a union of final atoms")]
    NotMeasurable { event: Event },
    #[error("conditioning event has zero mass")]
    ZeroMassCondition,
    #[error("event ranges over a different universe")]
    UniverseMismatch,
}

/// The full joint distribution over the final level's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointTable {
    universe: Universe,
    atoms: Vec<Event>,
    masses: Vec<Rational>,
}

impl JointTable {
    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn atoms(&self) -> &[Event] {
        &self.atoms
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    /// Mass of a measurable event: the sum over the atoms inside it, after
    /// checking that those atoms exactly tile it.
    pub fn mass_of(&self, event: &Event) -> Result<Rational, OracleError> {
        if event.universe() != self.universe {
            return Err(OracleError::UniverseMismatch);
        }
        let mut covered = Event::empty(self.universe);
        let mut total = Rational::zero();
        for (atom, mass) in self.atoms.iter().zip(&self.masses) {
            if atom.is_subset(event) {
                covered = covered.union(atom);
                total += mass;
            }
        }
        if &covered != event {
            return Err(OracleError::NotMeasurable {
                event: event.clone(),
            });
        }
        Ok(total)
    }

    /// `mass(a ∩ b) / mass(b)`, requiring `mass(b) > 0`.
    pub fn belief(&self, a: &Event, b: &Event) -> Result<Rational, OracleError> {
        self.mass_of(a)?;
        let denominator = self.mass_of(b)?;
        if denominator.is_zero() {
            return Err(OracleError::ZeroMassCondition);
        }
        Ok(self.mass_of(&a.intersection(b))? / denominator)
    }
}

/// Tabulates the mass of every final atom by walking all levels with plain
/// subset tests against the raw stored table.
pub fn oracle_joint(space: &CausalSpace) -> JointTable {
    let sequence = space.sequence();
    let depth = sequence.len();
    let atoms: Vec<Event> = sequence.atoms(depth).blocks().to_vec();
    let masses = atoms
        .iter()
        .map(|atom| {
            let mut mass = Rational::one();
            for level in 1..=depth {
                let event = sequence.event(level);
                let parents = sequence.atoms(level - 1);
                let (index, parent) = parents
                    .blocks()
                    .iter()
                    .enumerate()
                    .find(|(_, block)| atom.is_subset(block))
                    .expect("every final atom nests in each coarser level");
                let factor = match space.table().get(level, index) {
                    Some(p) => {
                        if atom.is_subset(event) {
                            p.clone()
                        } else {
                            assert!(atom.is_disjoint(event), "final atom straddles an event");
                            Rational::one() - p
                        }
                    }
                    None => {
                        // No stored entry means the pair is resolved, and the
                        // atom necessarily sits on the probability-1 branch.
                        assert!(
                            parent.is_subset(event) || parent.is_disjoint(event),
                            "uncertain pair is missing its entry"
                        );
                        Rational::one()
                    }
                };
                mass *= factor;
            }
            mass
        })
        .collect();
    JointTable {
        universe: sequence.universe(),
        atoms,
        masses,
    }
}

/// Conditional belief recomputed from [`oracle_joint`] alone.
pub fn oracle_belief(space: &CausalSpace, a: &Event, b: &Event) -> Result<Rational, OracleError> {
    oracle_joint(space).belief(a, b)
}
