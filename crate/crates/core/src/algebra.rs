//! Finite outcome universes, events, and generated algebras.
//!
//! An event over a universe of `M` outcomes is a subset of `{0, .., M-1}`,
//! stored as a bit vector. Because every finite algebra of events is
//! determined by its atoms (the minimal non-empty members), algebras are
//! represented by [`Partition`]s: a set of events belongs to the algebra
//! generated by some family iff it is a union of that family's atoms.
//!
//! The module also provides the three-valued truth function `t(a | b)`:
//! given that `b` occurred, `a` is [`TruthValue::True`] when `b ⊆ a`,
//! [`TruthValue::False`] when `a ∩ b = ∅`, and [`TruthValue::Uncertain`]
//! otherwise.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use thiserror::Error;

/// Default cap on universe size, overridable via the `with_limit`
/// constructors (the CLI maps `CAUSALSPACE_MAX_OUTCOMES` onto it).
pub const DEFAULT_MAX_OUTCOMES: usize = 4096;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("universe must contain at least one outcome")]
    EmptyUniverse,
    #[error("universe size {size} exceeds the maximum {max}")]
    UniverseTooLarge { size: usize, max: usize },
    #[error("outcome {index} out of range for a universe of {size} outcomes")]
    OutcomeOutOfRange { index: usize, size: usize },
    #[error("events range over different universes ({left} vs {right} outcomes)")]
    UniverseMismatch { left: usize, right: usize },
    #[error("conditioning event is empty")]
    EmptyCondition,
    #[error("blocks do not form a partition: {reason}")]
    InvalidPartition { reason: String },
}

/// A finite set of outcomes `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Universe {
    size: usize,
}

impl Universe {
    pub fn new(size: usize) -> Result<Self, AlgebraError> {
        Self::with_limit(size, DEFAULT_MAX_OUTCOMES)
    }

    pub fn with_limit(size: usize, max: usize) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyUniverse);
        }
        if size > max {
            return Err(AlgebraError::UniverseTooLarge { size, max });
        }
        Ok(Universe { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn outcomes(&self) -> impl Iterator<Item = usize> + use<> {
        0..self.size
    }

    fn words(&self) -> usize {
        self.size.div_ceil(WORD_BITS)
    }

    /// Mask for the last word, zeroing bits past `size`.
    fn tail_mask(&self) -> u64 {
        let rem = self.size % WORD_BITS;
        if rem == 0 { !0 } else { (1u64 << rem) - 1 }
    }
}

/// An immutable subset of a [`Universe`], value-like: equality, hashing and
/// ordering are by extension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    universe: Universe,
    words: Box<[u64]>,
}

impl Event {
    pub fn empty(universe: Universe) -> Self {
        Event {
            universe,
            words: vec![0; universe.words()].into_boxed_slice(),
        }
    }

    pub fn full(universe: Universe) -> Self {
        let mut words = vec![!0u64; universe.words()].into_boxed_slice();
        if let Some(last) = words.last_mut() {
            *last &= universe.tail_mask();
        }
        Event { universe, words }
    }

    pub fn singleton(universe: Universe, outcome: usize) -> Result<Self, AlgebraError> {
        Self::from_indices(universe, [outcome])
    }

    pub fn from_indices(
        universe: Universe,
        outcomes: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AlgebraError> {
        let mut words = vec![0u64; universe.words()];
        for index in outcomes {
            if index >= universe.size {
                return Err(AlgebraError::OutcomeOutOfRange {
                    index,
                    size: universe.size,
                });
            }
            words[index / WORD_BITS] |= 1u64 << (index % WORD_BITS);
        }
        Ok(Event {
            universe,
            words: words.into_boxed_slice(),
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn contains(&self, outcome: usize) -> bool {
        outcome < self.universe.size
            && self.words[outcome / WORD_BITS] & (1u64 << (outcome % WORD_BITS)) != 0
    }

    /// Number of outcomes in the event.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min_outcome(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        debug_assert_eq!(self.universe, other.universe);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Event {
            universe: self.universe,
            words,
        }
    }

    pub fn union(&self, other: &Event) -> Event {
        debug_assert_eq!(self.universe, other.universe);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Event {
            universe: self.universe,
            words,
        }
    }

    pub fn complement(&self) -> Event {
        let mut words: Box<[u64]> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= self.universe.tail_mask();
        }
        Event {
            universe: self.universe,
            words,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * WORD_BITS + b)
                }
            })
        })
    }

    /// Errors unless both operands range over the same universe; the operator
    /// impls below assume this has been checked upstream.
    pub fn check_universe(&self, other: &Event) -> Result<(), AlgebraError> {
        if self.universe != other.universe {
            return Err(AlgebraError::UniverseMismatch {
                left: self.universe.size,
                right: other.universe.size,
            });
        }
        Ok(())
    }
}

impl BitAnd for &Event {
    type Output = Event;
    fn bitand(self, rhs: &Event) -> Event {
        self.intersection(rhs)
    }
}

impl BitOr for &Event {
    type Output = Event;
    fn bitor(self, rhs: &Event) -> Event {
        self.union(rhs)
    }
}

impl Not for &Event {
    type Output = Event;
    fn not(self) -> Event {
        self.complement()
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, outcome) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{outcome}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event({self} / {})", self.universe.size)
    }
}

/// The three-valued truth of an event given another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Uncertain,
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "True",
            TruthValue::False => "False",
            TruthValue::Uncertain => "Uncertain",
        })
    }
}

/// `t(a | b)`: the truth of `a` given that `b` occurred. Errors if `b` is
/// empty or the universes differ.
pub fn truth(a: &Event, b: &Event) -> Result<TruthValue, AlgebraError> {
    a.check_universe(b)?;
    if b.is_empty() {
        return Err(AlgebraError::EmptyCondition);
    }
    Ok(if b.is_subset(a) {
        TruthValue::True
    } else if a.is_disjoint(b) {
        TruthValue::False
    } else {
        TruthValue::Uncertain
    })
}

/// A partition of a universe into non-empty, pairwise-disjoint blocks,
/// canonically ordered by least member. Doubles as the atom set of the
/// algebra it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    universe: Universe,
    blocks: Vec<Event>,
    /// `owner[w]` is the index of the block containing outcome `w`.
    owner: Box<[u32]>,
}

impl Partition {
    pub fn new(universe: Universe, mut blocks: Vec<Event>) -> Result<Self, AlgebraError> {
        let invalid = |reason: &str| AlgebraError::InvalidPartition {
            reason: reason.to_owned(),
        };
        if blocks.is_empty() {
            return Err(invalid("no blocks"));
        }
        let mut seen = Event::empty(universe);
        for block in &blocks {
            if block.universe != universe {
                return Err(AlgebraError::UniverseMismatch {
                    left: universe.size,
                    right: block.universe.size,
                });
            }
            if block.is_empty() {
                return Err(invalid("empty block"));
            }
            if !seen.is_disjoint(block) {
                return Err(invalid("blocks overlap"));
            }
            seen = seen.union(block);
        }
        if seen != Event::full(universe) {
            return Err(invalid("blocks do not cover the universe"));
        }
        blocks.sort_by_key(|b| b.min_outcome().expect("non-empty block"));
        Ok(Self::from_sorted_blocks(universe, blocks))
    }

    /// Builds from blocks already known to be disjoint, covering, non-empty,
    /// and sorted by least member.
    fn from_sorted_blocks(universe: Universe, blocks: Vec<Event>) -> Self {
        let mut owner = vec![0u32; universe.size].into_boxed_slice();
        for (i, block) in blocks.iter().enumerate() {
            for outcome in block.iter() {
                owner[outcome] = i as u32;
            }
        }
        Partition {
            universe,
            blocks,
            owner,
        }
    }

    /// The one-block partition `{Ω}`.
    pub fn trivial(universe: Universe) -> Self {
        Self::from_sorted_blocks(universe, vec![Event::full(universe)])
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the block containing `outcome`.
    pub fn block_index_of(&self, outcome: usize) -> Option<usize> {
        self.owner.get(outcome).map(|&i| i as usize)
    }

    /// Index of `event` among the blocks, if it is one.
    pub fn index_of(&self, event: &Event) -> Option<usize> {
        if event.universe != self.universe {
            return None;
        }
        let index = self.block_index_of(event.min_outcome()?)?;
        (&self.blocks[index] == event).then_some(index)
    }

    /// Splits every block along `event`, dropping empty halves. The result
    /// is the atom set of the algebra generated by this partition's blocks
    /// together with `event`.
    pub fn refine_by(&self, event: &Event) -> Result<Partition, AlgebraError> {
        if event.universe != self.universe {
            return Err(AlgebraError::UniverseMismatch {
                left: self.universe.size,
                right: event.universe.size,
            });
        }
        let mut blocks = Vec::with_capacity(self.blocks.len() * 2);
        for block in &self.blocks {
            let inside = block.intersection(event);
            match inside.len() {
                0 => blocks.push(block.clone()),
                n if n == block.len() => blocks.push(block.clone()),
                _ => {
                    blocks.push(block.intersection(&event.complement()));
                    blocks.push(inside);
                }
            }
        }
        blocks.sort_by_key(|b| b.min_outcome().expect("non-empty block"));
        Ok(Self::from_sorted_blocks(self.universe, blocks))
    }
}

/// Atom set of the algebra generated by `events`: the common refinement of
/// all of them, starting from `{Ω}`. An empty family yields the trivial
/// algebra `{∅, Ω}` whose sole atom is `Ω`.
pub fn generate_atoms(universe: Universe, events: &[Event]) -> Result<Partition, AlgebraError> {
    let mut atoms = Partition::trivial(universe);
    for event in events {
        atoms = atoms.refine_by(event)?;
    }
    Ok(atoms)
}

/// Whether `event` belongs to the algebra whose atom set is `atoms`,
/// i.e. whether it is a union of atoms (the empty union included).
pub fn algebra_contains(atoms: &Partition, event: &Event) -> Result<bool, AlgebraError> {
    if event.universe != atoms.universe {
        return Err(AlgebraError::UniverseMismatch {
            left: atoms.universe.size,
            right: event.universe.size,
        });
    }
    Ok(atoms
        .blocks
        .iter()
        .all(|block| block.is_subset(event) || block.is_disjoint(event)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u4() -> Universe {
        Universe::new(4).unwrap()
    }

    fn ev(indices: &[usize]) -> Event {
        Event::from_indices(u4(), indices.iter().copied()).unwrap()
    }

    #[test]
    fn universe_limits() {
        assert_eq!(Universe::new(0), Err(AlgebraError::EmptyUniverse));
        assert_eq!(
            Universe::with_limit(10, 4),
            Err(AlgebraError::UniverseTooLarge { size: 10, max: 4 })
        );
        assert_eq!(
            Universe::with_limit(4096, DEFAULT_MAX_OUTCOMES)
                .unwrap()
                .size(),
            4096
        );
    }

    #[test]
    fn event_construction_and_ops() {
        let e1 = ev(&[0, 1]);
        let e2 = ev(&[0, 2]);
        assert_eq!(&e1 & &e2, ev(&[0]));
        assert_eq!(&e1 | &e2, ev(&[0, 1, 2]));
        assert_eq!(!&e1, ev(&[2, 3]));
        assert_eq!(e1.len(), 2);
        assert!(e1.contains(1));
        assert!(!e1.contains(2));
        assert_eq!(e1.min_outcome(), Some(0));
        assert_eq!(Event::empty(u4()).min_outcome(), None);
        assert_eq!(e1.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(
            Event::from_indices(u4(), [7]),
            Err(AlgebraError::OutcomeOutOfRange { index: 7, size: 4 })
        );
        // Value semantics: equal extensions compare equal.
        assert_eq!(ev(&[1, 0]), ev(&[0, 1]));
        assert_eq!(e1.to_string(), "{0, 1}");
        assert_eq!(Event::empty(u4()).to_string(), "{}");
    }

    #[test]
    fn complement_respects_tail_bits() {
        let u = Universe::new(70).unwrap();
        let e = Event::singleton(u, 69).unwrap();
        let c = e.complement();
        assert_eq!(c.len(), 69);
        assert!(!c.contains(69));
        assert_eq!(c.complement(), e);
        assert_eq!(Event::full(u).len(), 70);
    }

    #[test]
    fn subset_and_disjoint() {
        assert!(ev(&[0]).is_subset(&ev(&[0, 1])));
        assert!(!ev(&[0, 2]).is_subset(&ev(&[0, 1])));
        assert!(ev(&[0, 1]).is_disjoint(&ev(&[2, 3])));
        assert!(Event::empty(u4()).is_subset(&Event::empty(u4())));
    }

    #[test]
    fn truth_three_values() {
        let e1 = ev(&[0, 1]);
        let e2 = ev(&[0, 2]);
        let omega = Event::full(u4());
        assert_eq!(truth(&e1, &ev(&[0])), Ok(TruthValue::True));
        assert_eq!(truth(&e1, &ev(&[2, 3])), Ok(TruthValue::False));
        assert_eq!(truth(&e1, &e2), Ok(TruthValue::Uncertain));
        assert_eq!(truth(&e1, &omega), Ok(TruthValue::Uncertain));
        assert_eq!(truth(&omega, &e1), Ok(TruthValue::True));
        assert_eq!(
            truth(&e1, &Event::empty(u4())),
            Err(AlgebraError::EmptyCondition)
        );
        let other = Event::full(Universe::new(5).unwrap());
        assert_eq!(
            truth(&e1, &other),
            Err(AlgebraError::UniverseMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn partition_validation() {
        let err = |blocks: Vec<Event>| Partition::new(u4(), blocks).unwrap_err();
        assert!(matches!(err(vec![]), AlgebraError::InvalidPartition { .. }));
        assert!(matches!(
            err(vec![ev(&[0, 1]), ev(&[1, 2, 3])]),
            AlgebraError::InvalidPartition { .. }
        ));
        assert!(matches!(
            err(vec![ev(&[0, 1])]),
            AlgebraError::InvalidPartition { .. }
        ));
        assert!(matches!(
            err(vec![ev(&[0, 1, 2, 3]), Event::empty(u4())]),
            AlgebraError::InvalidPartition { .. }
        ));
    }

    #[test]
    fn partition_canonical_order() {
        let p = Partition::new(u4(), vec![ev(&[1, 3]), ev(&[0, 2])]).unwrap();
        assert_eq!(p.blocks(), &[ev(&[0, 2]), ev(&[1, 3])]);
        assert_eq!(p.index_of(&ev(&[1, 3])), Some(1));
        assert_eq!(p.index_of(&ev(&[1])), None);
        assert_eq!(p.block_index_of(2), Some(0));
        assert_eq!(p.block_index_of(9), None);
    }

    #[test]
    fn atoms_of_generated_algebra() {
        let e1 = ev(&[0, 1]);
        let e2 = ev(&[0, 2]);
        assert_eq!(
            generate_atoms(u4(), &[]).unwrap().blocks(),
            &[Event::full(u4())]
        );
        assert_eq!(
            generate_atoms(u4(), std::slice::from_ref(&e1))
                .unwrap()
                .blocks(),
            &[ev(&[0, 1]), ev(&[2, 3])]
        );
        assert_eq!(
            generate_atoms(u4(), &[e1, e2]).unwrap().blocks(),
            &[ev(&[0]), ev(&[1]), ev(&[2]), ev(&[3])]
        );
    }

    #[test]
    fn refinement_skips_degenerate_splits() {
        let p = Partition::trivial(u4());
        // Refining by Ω or ∅ leaves the partition unchanged.
        assert_eq!(p.refine_by(&Event::full(u4())).unwrap(), p);
        assert_eq!(p.refine_by(&Event::empty(u4())).unwrap(), p);
    }

    #[test]
    fn membership_in_generated_algebra() {
        let atoms = generate_atoms(u4(), &[ev(&[0, 1])]).unwrap();
        assert!(algebra_contains(&atoms, &ev(&[0, 1])).unwrap());
        assert!(algebra_contains(&atoms, &ev(&[2, 3])).unwrap());
        assert!(algebra_contains(&atoms, &Event::empty(u4())).unwrap());
        assert!(algebra_contains(&atoms, &Event::full(u4())).unwrap());
        assert!(!algebra_contains(&atoms, &ev(&[0])).unwrap());
        assert!(!algebra_contains(&atoms, &ev(&[0, 2])).unwrap());
    }
}
