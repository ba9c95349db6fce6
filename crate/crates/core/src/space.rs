//! Causal spaces over finite universes.
//!
//! A causal space is built in two steps. First a [`PrimitiveSequence`] fixes
//! an ordered list of events `E_1, .., E_N`, each *novel*: not already
//! expressible in the algebra generated by its predecessors. Level `n` has an
//! associated atom set `𝔄_n` — the atoms of `σ(E_1, .., E_n)` — with `𝔄_0 =
//! {Ω}`. Refining by a novel event splits at least one atom, so the sequence
//! of algebras is strictly increasing.
//!
//! Second, a causal function assigns each *uncertain* pair — an event `E_n`
//! together with an atom `a ∈ 𝔄_{n-1}` that neither contains nor excludes it
//! — a probability `cause(E_n | a)`. Pairs resolved by set inclusion are
//! never stored: if `a ⊆ E_n` the value is forced to 1, if `a ∩ E_n = ∅` it
//! is forced to 0. [`CausalSpace::build`] validates exactly that shape:
//! every uncertain pair covered once, forced pairs only restated verbatim.
//!
//! The mass of an atom is the product of the causal values along its path of
//! ancestors, one factor per level; [`CausalSpace::intervene`] replaces a
//! level's stored column with a constant, which is precisely the `do`
//! operation on the induced belief space.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Event, Partition, TruthValue, Universe, truth};
use crate::rational::{Rational, is_probability};

/// Default cap on sequence length, overridable via
/// [`PrimitiveSequence::with_limit`].
pub const DEFAULT_MAX_EVENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("sequence must contain at least one event")]
    EmptySequence,
    #[error("sequence has {count} events, exceeding the maximum {max}")]
    TooManyEvents { count: usize, max: usize },
    #[error("event at level {level} already lies in the algebra generated by its predecessors")]
    NoveltyViolation { level: usize },
    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("{event} is not an atom at level {level}")]
    NotAnAtom { level: usize, event: Event },
    #[error("{event} is not an atom of any level")]
    NotAPathEvent { event: Event },
    #[error("atom {atom} is not contained in root {root}")]
    RootDoesNotContainAtom { atom: Event, root: Event },
    #[error("cause value {value} for level {level} given {atom} lies outside [0, 1]")]
    ValueOutOfRange {
        level: usize,
        atom: Event,
        value: Rational,
    },
    #[error(
        "cause value {value} for level {level} given {atom} contradicts the forced value {forced}"
    )]
    ContradictsResolvedPair {
        level: usize,
        atom: Event,
        value: Rational,
        forced: Rational,
    },
    #[error("duplicate cause entry for level {level} given {atom}")]
    DuplicateEntry { level: usize, atom: Event },
    #[error("missing cause entry for level {level} given atom {atom}")]
    MissingEntry { level: usize, atom: Event },
    #[error("interventions repeat level {level}")]
    DuplicateInterventionLevel { level: usize },
    #[error("intervention literals at levels {first} and {second} are disjoint")]
    DisjointInterventionLiterals { first: usize, second: usize },
}

/// A level paired with a polarity: `+n` stands for `E_n`, `-n` for its
/// complement. Levels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    level: usize,
    positive: bool,
}

impl Literal {
    pub fn positive(level: usize) -> Self {
        Literal {
            level,
            positive: true,
        }
    }

    pub fn negative(level: usize) -> Self {
        Literal {
            level,
            positive: false,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }
}

/// An ordered sequence of novel events with the atom sets of every level's
/// generated algebra precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveSequence {
    universe: Universe,
    events: Vec<Event>,
    /// `levels[n]` is `𝔄_n`; index 0 holds the trivial partition.
    levels: Vec<Partition>,
}

impl PrimitiveSequence {
    pub fn new(universe: Universe, events: Vec<Event>) -> Result<Self, SpaceError> {
        Self::with_limit(universe, events, DEFAULT_MAX_EVENTS)
    }

    pub fn with_limit(
        universe: Universe,
        events: Vec<Event>,
        max_events: usize,
    ) -> Result<Self, SpaceError> {
        if events.is_empty() {
            return Err(SpaceError::EmptySequence);
        }
        if events.len() > max_events {
            return Err(SpaceError::TooManyEvents {
                count: events.len(),
                max: max_events,
            });
        }
        let mut levels = vec![Partition::trivial(universe)];
        for (i, event) in events.iter().enumerate() {
            let previous = levels.last().expect("at least the trivial level");
            event.check_universe(&Event::full(universe))?;
            if crate::algebra::algebra_contains(previous, event)? {
                return Err(SpaceError::NoveltyViolation { level: i + 1 });
            }
            levels.push(previous.refine_by(event)?);
        }
        Ok(PrimitiveSequence {
            universe,
            events,
            levels,
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// Number of events `N`.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The event at `level` (1-based). Panics if out of range.
    pub fn event(&self, level: usize) -> &Event {
        assert!(
            (1..=self.len()).contains(&level),
            "level {level} out of range"
        );
        &self.events[level - 1]
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Atom set `𝔄_level` for `level` in `0..=N`. Panics if out of range.
    pub fn atoms(&self, level: usize) -> &Partition {
        assert!(level <= self.len(), "level {level} out of range");
        &self.levels[level]
    }

    /// The event denoted by a literal (a clone or a complement).
    pub fn literal_event(&self, literal: Literal) -> Result<Event, SpaceError> {
        self.check_level(literal.level)?;
        let event = self.event(literal.level);
        Ok(if literal.positive {
            event.clone()
        } else {
            event.complement()
        })
    }

    /// Smallest level whose atom set contains `event` as a block. Events that
    /// arise this way are exactly the paths through the refinement tree.
    pub fn level_of_atom(&self, event: &Event) -> Option<usize> {
        (0..=self.len()).find(|&level| self.levels[level].index_of(event).is_some())
    }

    fn check_level(&self, level: usize) -> Result<(), SpaceError> {
        if (1..=self.len()).contains(&level) {
            Ok(())
        } else {
            Err(SpaceError::LevelOutOfRange {
                level,
                max: self.len(),
            })
        }
    }
}

/// One causal assignment: `cause(E_level | atom) = value`, with `atom` drawn
/// from `𝔄_{level-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauseEntry {
    pub level: usize,
    pub atom: Event,
    pub value: Rational,
}

/// Stored causal values, one column per level, keyed by the atom's index in
/// the preceding level's atom set. Holds entries for uncertain pairs only;
/// resolved pairs are recomputed from set inclusion on demand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CausalTable {
    levels: Vec<BTreeMap<usize, Rational>>,
}

impl CausalTable {
    pub fn get(&self, level: usize, atom_index: usize) -> Option<&Rational> {
        self.levels.get(level - 1)?.get(&atom_index)
    }

    /// Stored entries of one level in atom-index order.
    pub fn entries(&self, level: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.levels[level - 1].iter().map(|(&i, v)| (i, v))
    }

    fn force_level(&mut self, level: usize, value: &Rational) {
        for stored in self.levels[level - 1].values_mut() {
            *stored = value.clone();
        }
    }
}

/// A validated primitive sequence plus a complete causal function over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalSpace {
    sequence: Arc<PrimitiveSequence>,
    table: CausalTable,
}

impl CausalSpace {
    /// Validates `entries` against the sequence: every uncertain pair exactly
    /// once with a value in `[0, 1]`; entries for resolved pairs permitted
    /// only when they restate the forced value.
    pub fn build(
        sequence: PrimitiveSequence,
        entries: Vec<CauseEntry>,
    ) -> Result<Self, SpaceError> {
        let mut levels: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); sequence.len()];
        for entry in entries {
            sequence.check_level(entry.level)?;
            let atoms = sequence.atoms(entry.level - 1);
            let index = atoms
                .index_of(&entry.atom)
                .ok_or_else(|| SpaceError::NotAnAtom {
                    level: entry.level - 1,
                    event: entry.atom.clone(),
                })?;
            let event = sequence.event(entry.level);
            match truth(event, &entry.atom)? {
                TruthValue::Uncertain => {
                    if !is_probability(&entry.value) {
                        return Err(SpaceError::ValueOutOfRange {
                            level: entry.level,
                            atom: entry.atom,
                            value: entry.value,
                        });
                    }
                    if levels[entry.level - 1].insert(index, entry.value).is_some() {
                        return Err(SpaceError::DuplicateEntry {
                            level: entry.level,
                            atom: entry.atom,
                        });
                    }
                }
                resolved => {
                    let forced = if resolved == TruthValue::True {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    if entry.value != forced {
                        return Err(SpaceError::ContradictsResolvedPair {
                            level: entry.level,
                            atom: entry.atom,
                            value: entry.value,
                            forced,
                        });
                    }
                }
            }
        }
        for level in 1..=sequence.len() {
            let event = sequence.event(level);
            for (index, atom) in sequence.atoms(level - 1).blocks().iter().enumerate() {
                if truth(event, atom)? == TruthValue::Uncertain
                    && !levels[level - 1].contains_key(&index)
                {
                    return Err(SpaceError::MissingEntry {
                        level,
                        atom: atom.clone(),
                    });
                }
            }
        }
        Ok(CausalSpace {
            sequence: Arc::new(sequence),
            table: CausalTable { levels },
        })
    }

    pub fn sequence(&self) -> &PrimitiveSequence {
        &self.sequence
    }

    pub fn table(&self) -> &CausalTable {
        &self.table
    }

    pub fn universe(&self) -> Universe {
        self.sequence.universe()
    }

    /// Number of levels `N`.
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn omega(&self) -> Event {
        Event::full(self.universe())
    }

    /// `cause(literal | given)` for `given` an atom of the literal's
    /// conditioning algebra `𝔄_{level-1}`. Resolved pairs yield their forced
    /// value; negative literals the complementary probability.
    pub fn cause(&self, literal: Literal, given: &Event) -> Result<Rational, SpaceError> {
        self.sequence.check_level(literal.level)?;
        let atoms = self.sequence.atoms(literal.level - 1);
        let index = atoms.index_of(given).ok_or_else(|| SpaceError::NotAnAtom {
            level: literal.level - 1,
            event: given.clone(),
        })?;
        let event = self.sequence.event(literal.level);
        Ok(match truth(event, given)? {
            TruthValue::Uncertain => {
                let p = self
                    .table
                    .get(literal.level, index)
                    .expect("uncertain pair covered");
                if literal.positive {
                    p.clone()
                } else {
                    Rational::one() - p
                }
            }
            TruthValue::True => {
                if literal.positive {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            TruthValue::False => {
                if literal.positive {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            }
        })
    }

    /// Mass of a path atom relative to an ancestor path atom: the product of
    /// causal values along the refinement path between their levels. `atom`
    /// and `root` must be atoms of (possibly different) levels with
    /// `atom ⊆ root`; `atom_mass(a, Ω)` is the absolute mass of `a`.
    pub fn atom_mass(&self, atom: &Event, root: &Event) -> Result<Rational, SpaceError> {
        let to_level =
            self.sequence
                .level_of_atom(atom)
                .ok_or_else(|| SpaceError::NotAPathEvent {
                    event: atom.clone(),
                })?;
        let from_level =
            self.sequence
                .level_of_atom(root)
                .ok_or_else(|| SpaceError::NotAPathEvent {
                    event: root.clone(),
                })?;
        if atom == root {
            return Ok(Rational::one());
        }
        if !atom.is_subset(root) {
            return Err(SpaceError::RootDoesNotContainAtom {
                atom: atom.clone(),
                root: root.clone(),
            });
        }
        // A strict sub-atom necessarily sits at a deeper level than its root.
        debug_assert!(from_level < to_level);
        Ok(self.chain_mass(
            atom.min_outcome().expect("atoms are non-empty"),
            from_level,
            to_level,
        ))
    }

    /// Product of stored causal values along the path of the atom containing
    /// outcome `witness`, over levels `from_level+1 ..= to_level`. Resolved
    /// pairs contribute a factor of 1: the atom of the witness is entirely
    /// inside or outside each event, and the factor follows the witness.
    pub(crate) fn chain_mass(
        &self,
        witness: usize,
        from_level: usize,
        to_level: usize,
    ) -> Rational {
        let mut mass = Rational::one();
        for level in from_level + 1..=to_level {
            let parent = self
                .sequence
                .atoms(level - 1)
                .block_index_of(witness)
                .expect("witness in universe");
            if let Some(p) = self.table.get(level, parent) {
                if self.sequence.event(level).contains(witness) {
                    mass *= p;
                } else {
                    mass *= Rational::one() - p;
                }
                if mass.is_zero() {
                    return mass;
                }
            }
        }
        mass
    }

    /// The space with the causal column of `literal`'s level overwritten by
    /// the constant 1 (positive) or 0 (negative). Only uncertain pairs are
    /// rewritten — forced values are facts of the algebra, not choices — so
    /// intervening is idempotent and interventions at distinct levels
    /// commute.
    pub fn intervene(&self, literal: Literal) -> Result<CausalSpace, SpaceError> {
        self.sequence.check_level(literal.level)?;
        let forced = if literal.positive {
            Rational::one()
        } else {
            Rational::zero()
        };
        let mut table = self.table.clone();
        table.force_level(literal.level, &forced);
        Ok(CausalSpace {
            sequence: Arc::clone(&self.sequence),
            table,
        })
    }

    /// Successive interventions at distinct levels. Rejects repeated levels
    /// and pairs of literals denoting disjoint events (a joint setting with
    /// nothing to witness it).
    pub fn intervene_composite(&self, literals: &[Literal]) -> Result<CausalSpace, SpaceError> {
        for (i, a) in literals.iter().enumerate() {
            let a_event = self.sequence.literal_event(*a)?;
            for b in &literals[..i] {
                if a.level == b.level {
                    return Err(SpaceError::DuplicateInterventionLevel { level: a.level });
                }
                if a_event.is_disjoint(&self.sequence.literal_event(*b)?) {
                    return Err(SpaceError::DisjointInterventionLiterals {
                        first: b.level,
                        second: a.level,
                    });
                }
            }
        }
        literals
            .iter()
            .try_fold(self.clone(), |space, &literal| space.intervene(literal))
    }
}
