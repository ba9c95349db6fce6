//! Shared fixtures and seeded corpus generation for the integration tests
//! and benches. Everything here is deterministic given the seed.
#![allow(dead_code)]

use causalspace::dsl::{NameTable, elaborate, parse_model};
use causalspace::{
    CausalSpace, CauseEntry, Event, PrimitiveSequence, Rational, TruthValue, Universe, rational,
    truth,
};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn event(universe: Universe, outcomes: &[usize]) -> Event {
    Event::from_indices(universe, outcomes.iter().copied()).unwrap()
}

/// Two primitives over four outcomes: E1 = {0, 1}, E2 = {0, 2}, with
/// P(E1) = 1/2, P(E2 | E1) = 1/3 and P(E2 | ~E1) = 1/4.
pub fn rx() -> CausalSpace {
    let universe = Universe::new(4).unwrap();
    let e1 = event(universe, &[0, 1]);
    let e2 = event(universe, &[0, 2]);
    let sequence = PrimitiveSequence::new(universe, vec![e1, e2]).unwrap();
    let entries = vec![
        CauseEntry {
            level: 1,
            atom: Event::full(universe),
            value: rational(1, 2),
        },
        CauseEntry {
            level: 2,
            atom: event(universe, &[0, 1]),
            value: rational(1, 3),
        },
        CauseEntry {
            level: 2,
            atom: event(universe, &[2, 3]),
            value: rational(1, 4),
        },
    ];
    CausalSpace::build(sequence, entries).unwrap()
}

/// Same sequence as [`rx`] but with P(E1) = 0, leaving the whole positive
/// branch with zero mass.
pub fn rz() -> CausalSpace {
    let universe = Universe::new(4).unwrap();
    let e1 = event(universe, &[0, 1]);
    let e2 = event(universe, &[0, 2]);
    let sequence = PrimitiveSequence::new(universe, vec![e1, e2]).unwrap();
    let entries = vec![
        CauseEntry {
            level: 1,
            atom: Event::full(universe),
            value: rational(0, 1),
        },
        CauseEntry {
            level: 2,
            atom: event(universe, &[0, 1]),
            value: rational(1, 3),
        },
        CauseEntry {
            level: 2,
            atom: event(universe, &[2, 3]),
            value: rational(1, 4),
        },
    ];
    CausalSpace::build(sequence, entries).unwrap()
}

/// The [`rx`] space in model-source form.
pub const RX_MODEL: &str = "\
outcomes 4
event E1 = {0, 1}
event E2 = {0, 2}
cause P(E1 | *) = 1/2
cause P(E2 | E1) = 1/3
cause P(E2 | ~E1) = 1/4
";

/// Three bit-slice primitives over eight outcomes, elaborated from source so
/// callers also get the name table.
pub fn named_space() -> (CausalSpace, NameTable) {
    let text = "\
outcomes 8
event A = {1, 3, 5, 7}
event B = {2, 3, 6, 7}
event C = {4, 5, 6, 7}
cause P(A | *) = 1/2
cause P(B | A) = 1/3
cause P(B | ~A) = 1/4
cause P(C | A & B) = 1/5
cause P(C | A & ~B) = 2/5
cause P(C | ~A & B) = 3/5
cause P(C | ~A & ~B) = 4/5
";
    elaborate(&parse_model(text).unwrap()).unwrap()
}

/// A space of `depth` primitives over 2^depth outcomes where primitive k is
/// the set of outcomes with bit k set. Every atom splits at every level, so
/// the causal table is as dense as the shape allows.
pub fn dense_space(depth: usize, seed: u64) -> CausalSpace {
    assert!((1..=16).contains(&depth));
    let mut rng = rng(seed);
    let universe = Universe::with_limit(1 << depth, 1 << depth).unwrap();
    let events: Vec<Event> = (0..depth)
        .map(|k| Event::from_indices(universe, (0..1 << depth).filter(|o| o & (1 << k) != 0)))
        .collect::<Result<_, _>>()
        .unwrap();
    let sequence = PrimitiveSequence::with_limit(universe, events, depth).unwrap();
    let mut entries = Vec::new();
    for level in 1..=depth {
        for atom in sequence.atoms(level - 1).blocks() {
            entries.push(CauseEntry {
                level,
                atom: atom.clone(),
                value: random_probability(&mut rng, false),
            });
        }
    }
    CausalSpace::build(sequence, entries).unwrap()
}

fn random_probability(rng: &mut ChaCha8Rng, allow_extreme: bool) -> Rational {
    if allow_extreme && rng.random_bool(0.12) {
        return if rng.random_bool(0.5) {
            rational(0, 1)
        } else {
            rational(1, 1)
        };
    }
    let denom = rng.random_range(2..=24);
    let numer = rng.random_range(1..denom);
    rational(numer, denom)
}

/// A random causal space: up to 32 outcomes and 5 primitives, each primitive
/// built per-atom (keep all, drop all, or split) with at least one genuine
/// split so novelty holds by construction. Roughly one table value in eight
/// is an exact 0 or 1, so zero-mass branches show up in the corpus.
pub fn random_space(rng: &mut ChaCha8Rng) -> CausalSpace {
    let size = rng.random_range(4..=32);
    let universe = Universe::new(size).unwrap();
    let target = rng.random_range(1..=5);
    let mut events: Vec<Event> = Vec::new();
    let mut atoms = vec![Event::full(universe)];
    for _ in 0..target {
        let Some(next) = random_novel_event(rng, universe, &atoms) else {
            break;
        };
        let mut refined = Vec::new();
        for atom in &atoms {
            let inside = atom.intersection(&next);
            let outside = atom.intersection(&next.complement());
            for part in [inside, outside] {
                if !part.is_empty() {
                    refined.push(part);
                }
            }
        }
        atoms = refined;
        events.push(next);
    }
    let sequence = PrimitiveSequence::new(universe, events).unwrap();
    let mut entries = Vec::new();
    for level in 1..=sequence.len() {
        let event = sequence.event(level).clone();
        for atom in sequence.atoms(level - 1).blocks() {
            if truth(&event, atom).unwrap() == TruthValue::Uncertain {
                entries.push(CauseEntry {
                    level,
                    atom: atom.clone(),
                    value: random_probability(rng, true),
                });
            }
        }
    }
    CausalSpace::build(sequence, entries).unwrap()
}

/// Unions per-atom picks (all, none, or a proper nonempty slice) and forces
/// at least one slice so the result escapes the current algebra. Returns
/// `None` when every atom is a singleton and no further primitive exists.
fn random_novel_event(rng: &mut ChaCha8Rng, universe: Universe, atoms: &[Event]) -> Option<Event> {
    let splittable: Vec<usize> = (0..atoms.len()).filter(|&i| atoms[i].len() >= 2).collect();
    let &forced = splittable.choose(rng)?;
    let mut out = Event::empty(universe);
    for (i, atom) in atoms.iter().enumerate() {
        if i == forced {
            out = out.union(&random_proper_slice(rng, atom));
            continue;
        }
        match rng.random_range(0..3) {
            0 => out = out.union(atom),
            1 => {}
            _ => {
                if atom.len() >= 2 {
                    out = out.union(&random_proper_slice(rng, atom));
                }
            }
        }
    }
    Some(out)
}

fn random_proper_slice(rng: &mut ChaCha8Rng, atom: &Event) -> Event {
    let members: Vec<usize> = atom.iter().collect();
    let keep = rng.random_range(1..members.len());
    let mut shuffled = members;
    shuffled.shuffle(rng);
    Event::from_indices(atom.universe(), shuffled.into_iter().take(keep)).unwrap()
}

/// A measurable event: the union of a random nonempty subset of the deepest
/// atom set.
pub fn random_measurable(rng: &mut ChaCha8Rng, space: &CausalSpace) -> Event {
    let atoms = space.sequence().atoms(space.len()).blocks();
    let mut out = Event::empty(space.universe());
    for atom in atoms {
        if rng.random_bool(0.5) {
            out = out.union(atom);
        }
    }
    if out.is_empty() {
        out = atoms[rng.random_range(0..atoms.len())].clone();
    }
    out
}

/// A measurable partition of the universe into `groups` nonempty unions of
/// deepest atoms. Falls back to fewer groups when there are not enough atoms.
pub fn random_partition(rng: &mut ChaCha8Rng, space: &CausalSpace, groups: usize) -> Vec<Event> {
    let mut atoms: Vec<Event> = space.sequence().atoms(space.len()).blocks().to_vec();
    atoms.shuffle(rng);
    let groups = groups.min(atoms.len()).max(1);
    let mut cells = vec![Event::empty(space.universe()); groups];
    for (i, atom) in atoms.iter().enumerate() {
        let slot = if i < groups {
            i
        } else {
            rng.random_range(0..groups)
        };
        cells[slot] = cells[slot].union(atom);
    }
    cells
}
