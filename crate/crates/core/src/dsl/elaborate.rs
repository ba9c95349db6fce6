//! From syntax tree to validated causal space.
//!
//! Elaboration is where the causal structure is checked: event novelty,
//! condition resolution (each cause condition must denote exactly one atom
//! of the preceding level's algebra), duplicate statements, and table
//! coverage. Every failure — including those surfaced by
//! [`CausalSpace::build`] — is mapped back to a source position.

use std::collections::HashMap;

use super::ast::{ConditionAst, ModelAst, Pos};
use super::{ErrorClass, SourceError};
use crate::Limits;
use crate::algebra::{Event, Universe};
use crate::space::{CausalSpace, CauseEntry, PrimitiveSequence, SpaceError};

/// Maps declared event names to levels (1-based, declaration order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameTable {
    names: Vec<String>,
    levels: HashMap<String, usize>,
}

impl NameTable {
    fn new(names: Vec<String>) -> Self {
        let levels = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i + 1))
            .collect();
        NameTable { names, levels }
    }

    /// Synthetic `E1..=En` names, for exporting spaces that were built
    /// programmatically rather than elaborated from source.
    pub fn numbered(len: usize) -> NameTable {
        NameTable::new((1..=len).map(|i| format!("E{i}")).collect())
    }

    pub fn level_of(&self, name: &str) -> Option<usize> {
        self.levels.get(name).copied()
    }

    /// Name of the event at `level` (1-based). Panics if out of range.
    pub fn name_of(&self, level: usize) -> &str {
        &self.names[level - 1]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

fn validate_err(pos: Pos, message: impl Into<String>) -> SourceError {
    SourceError::new(ErrorClass::Validate, pos, message)
}

/// [`elaborate_with_limits`] under the default resource caps.
pub fn elaborate(ast: &ModelAst) -> Result<(CausalSpace, NameTable), SourceError> {
    elaborate_with_limits(ast, Limits::default())
}

pub fn elaborate_with_limits(
    ast: &ModelAst,
    limits: Limits,
) -> Result<(CausalSpace, NameTable), SourceError> {
    let universe = Universe::with_limit(ast.outcomes, limits.max_outcomes)
        .map_err(|e| validate_err(ast.outcomes_pos, e.to_string()))?;

    let mut events = Vec::with_capacity(ast.events.len());
    for decl in &ast.events {
        let event = Event::from_indices(universe, decl.members.iter().copied())
            .map_err(|e| validate_err(decl.pos, e.to_string()))?;
        events.push(event);
    }
    let sequence = PrimitiveSequence::with_limit(universe, events, limits.max_events).map_err(
        |e| match e {
            SpaceError::NoveltyViolation { level } => validate_err(
                ast.events[level - 1].pos,
                format!(
                    "event `{}` is redundant: it already lies in the algebra of the preceding events",
                    ast.events[level - 1].name
                ),
            ),
            SpaceError::TooManyEvents { count, max } => {
                validate_err(ast.events[max].pos, format!("{count} events exceed the maximum {max}"))
            }
            SpaceError::EmptySequence => {
                validate_err(ast.outcomes_pos, "model declares no events")
            }
            other => validate_err(ast.outcomes_pos, other.to_string()),
        },
    )?;
    let names = NameTable::new(ast.events.iter().map(|d| d.name.clone()).collect());

    let mut entries = Vec::with_capacity(ast.causes.len());
    // (level, atom index) -> position of the statement that claimed the pair.
    let mut claimed: HashMap<(usize, usize), Pos> = HashMap::new();
    // (level, atom) -> same position, keyed for mapping build errors back.
    let mut entry_pos: HashMap<(usize, Event), Pos> = HashMap::new();
    for cause in &ast.causes {
        let level = names
            .level_of(&cause.target)
            .expect("parser resolved the target name");
        let atoms = sequence.atoms(level - 1);
        let denoted = match &cause.condition {
            ConditionAst::Star => Event::full(universe),
            ConditionAst::All(literals) => {
                let mut event = Event::full(universe);
                for literal in literals {
                    let referenced = names
                        .level_of(&literal.name)
                        .expect("parser resolved condition names");
                    if referenced >= level {
                        return Err(validate_err(
                            cause.pos,
                            format!(
                                "stale condition: `{}` (level {referenced}) is not strictly \
                                 earlier than `{}` (level {level})",
                                literal.name, cause.target
                            ),
                        ));
                    }
                    let base = sequence.event(referenced);
                    event = event.intersection(&if literal.negated {
                        base.complement()
                    } else {
                        base.clone()
                    });
                }
                event
            }
        };
        let matched: Vec<usize> = atoms
            .blocks()
            .iter()
            .enumerate()
            .filter(|(_, block)| block.is_subset(&denoted))
            .map(|(i, _)| i)
            .collect();
        let index = match matched.len() {
            1 => matched[0],
            0 => {
                return Err(validate_err(
                    cause.pos,
                    format!("condition for `{}` denotes the empty event", cause.target),
                ));
            }
            n => {
                return Err(validate_err(
                    cause.pos,
                    format!(
                        "ambiguous condition for `{}`: it covers {n} atoms of level {} \
                         instead of exactly one",
                        cause.target,
                        level - 1
                    ),
                ));
            }
        };
        if let Some(first) = claimed.insert((level, index), cause.pos) {
            return Err(validate_err(
                cause.pos,
                format!(
                    "duplicate cause statement for `{}` given {} (first at line {})",
                    cause.target,
                    atoms.blocks()[index],
                    first.line
                ),
            ));
        }
        let atom = atoms.blocks()[index].clone();
        entry_pos.insert((level, atom.clone()), cause.pos);
        entries.push(CauseEntry {
            level,
            atom,
            value: cause.value.clone(),
        });
    }

    let stmt_pos = |level: usize, atom: &Event| {
        entry_pos
            .get(&(level, atom.clone()))
            .copied()
            .unwrap_or(ast.outcomes_pos)
    };
    let space = CausalSpace::build(sequence, entries).map_err(|e| match &e {
        SpaceError::MissingEntry { level, atom } => validate_err(
            ast.events[level - 1].pos,
            format!(
                "missing cause statement for `{}` given atom {atom}",
                names.name_of(*level)
            ),
        ),
        SpaceError::ValueOutOfRange { level, atom, value } => validate_err(
            stmt_pos(*level, atom),
            format!("probability {value} lies outside [0, 1]"),
        ),
        SpaceError::ContradictsResolvedPair {
            level,
            atom,
            value,
            forced,
        } => validate_err(
            stmt_pos(*level, atom),
            format!(
                "stated probability {value} contradicts the value {forced} forced by the \
                 algebra for `{}` given {atom}",
                names.name_of(*level)
            ),
        ),
        other => validate_err(ast.outcomes_pos, other.to_string()),
    })?;
    Ok((space, names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_model;
    use crate::rational::rational;
    use crate::space::Literal;

    fn elaborated(text: &str) -> (CausalSpace, NameTable) {
        elaborate(&parse_model(text).unwrap()).unwrap()
    }

    fn failure(text: &str) -> SourceError {
        elaborate(&parse_model(text).unwrap()).unwrap_err()
    }

    const RX: &str = "\
outcomes 4
event E1 = {0, 1}
event E2 = {0, 2}
cause P(E1 | *) = 1/2
cause P(E2 | E1) = 1/3
cause P(E2 | ~E1) = 1/4
";

    #[test]
    fn reference_model_elaborates() {
        let (space, names) = elaborated(RX);
        assert_eq!(names.level_of("E1"), Some(1));
        assert_eq!(names.level_of("E2"), Some(2));
        assert_eq!(names.name_of(2), "E2");
        assert_eq!(space.len(), 2);
        let e1 = space.sequence().event(1).clone();
        assert_eq!(
            space.cause(Literal::positive(2), &e1).unwrap(),
            rational(1, 3)
        );
        assert_eq!(space.mass(&e1).unwrap(), rational(1, 2));
    }

    #[test]
    fn decimal_values_are_exact() {
        let (space, _) = elaborated("outcomes 2\nevent A = {0}\ncause P(A | *) = 0.25\n");
        assert_eq!(
            space.cause(Literal::positive(1), &space.omega()).unwrap(),
            rational(1, 4)
        );
    }

    #[test]
    fn stale_condition_is_rejected() {
        let err = failure(
            "outcomes 4\nevent E1 = {0, 1}\nevent E2 = {0, 2}\n\
             cause P(E1 | E2) = 1/2\ncause P(E2 | E1) = 1/3\ncause P(E2 | ~E1) = 1/4\n",
        );
        assert_eq!(err.class, ErrorClass::Validate);
        assert_eq!(err.line, 4);
        assert!(err.message.contains("stale"), "{}", err.message);

        let self_ref = failure("outcomes 2\nevent A = {0}\ncause P(A | A) = 1\n");
        assert!(self_ref.message.contains("stale"));
    }

    #[test]
    fn ambiguous_and_empty_conditions() {
        // `*` does not denote an atom beyond level 1.
        let star = failure(
            "outcomes 4\nevent E1 = {0, 1}\nevent E2 = {0, 2}\n\
             cause P(E1 | *) = 1/2\ncause P(E2 | *) = 1/3\n",
        );
        assert_eq!(star.class, ErrorClass::Validate);
        assert_eq!(star.line, 5);
        assert!(star.message.contains("ambiguous"), "{}", star.message);

        // A three-level model where one literal underdetermines the atom.
        let coarse = failure(
            "outcomes 8\n\
             event E1 = {0, 1, 2, 3}\nevent E2 = {0, 1, 4, 5}\nevent E3 = {0, 2, 4, 6}\n\
             cause P(E1 | *) = 1/2\n\
             cause P(E2 | E1) = 1/2\ncause P(E2 | ~E1) = 1/2\n\
             cause P(E3 | E1) = 1/2\n",
        );
        assert_eq!(coarse.line, 8);
        assert!(coarse.message.contains("ambiguous"));

        let empty = failure(
            "outcomes 4\nevent E1 = {0, 1}\nevent E2 = {0, 2}\n\
             cause P(E1 | *) = 1/2\ncause P(E2 | E1 & ~E1) = 1/3\n",
        );
        assert_eq!(empty.line, 5);
        assert!(empty.message.contains("empty"), "{}", empty.message);
    }

    #[test]
    fn duplicate_and_missing_statements() {
        let duplicate = failure(
            "outcomes 4\nevent E1 = {0, 1}\nevent E2 = {0, 2}\n\
             cause P(E1 | *) = 1/2\ncause P(E2 | E1) = 1/3\n\
             cause P(E2 | E1) = 1/4\ncause P(E2 | ~E1) = 1/4\n",
        );
        assert_eq!(duplicate.class, ErrorClass::Validate);
        assert_eq!(duplicate.line, 6);
        assert!(duplicate.message.contains("duplicate"));
        assert!(duplicate.message.contains("line 5"));

        let missing = failure(
            "outcomes 4\nevent E1 = {0, 1}\nevent E2 = {0, 2}\n\
             cause P(E1 | *) = 1/2\ncause P(E2 | E1) = 1/3\n",
        );
        assert_eq!(missing.class, ErrorClass::Validate);
        // Reported at the declaration of the event whose table is incomplete.
        assert_eq!(missing.line, 3);
        assert!(missing.message.contains("missing cause statement for `E2`"));
    }

    #[test]
    fn probability_range_and_forced_values() {
        let range = failure("outcomes 2\nevent A = {0}\ncause P(A | *) = 3/2\n");
        assert_eq!(range.class, ErrorClass::Validate);
        assert_eq!(range.line, 3);
        assert!(range.message.contains("outside"));

        // {2} ⊆ B forces P(B | ~A) = 1; restating it is fine, varying it is not.
        let forced_ok = "outcomes 3\nevent A = {0, 1}\nevent B = {1, 2}\n\
                         cause P(A | *) = 1/2\ncause P(B | A) = 1/3\ncause P(B | ~A) = 1\n";
        elaborated(forced_ok);
        let forced_bad = failure(
            "outcomes 3\nevent A = {0, 1}\nevent B = {1, 2}\n\
             cause P(A | *) = 1/2\ncause P(B | A) = 1/3\ncause P(B | ~A) = 1/2\n",
        );
        assert_eq!(forced_bad.class, ErrorClass::Validate);
        assert_eq!(forced_bad.line, 6);
        assert!(forced_bad.message.contains("forced"));
    }

    #[test]
    fn structure_errors_map_to_declarations() {
        let redundant =
            failure("outcomes 4\nevent E1 = {0, 1}\nevent E1c = {2, 3}\ncause P(E1 | *) = 1/2\n");
        assert_eq!(redundant.class, ErrorClass::Validate);
        assert_eq!(redundant.line, 3);
        assert!(redundant.message.contains("redundant"));

        let no_events = failure("outcomes 4\n");
        assert_eq!(no_events.line, 1);
        assert!(no_events.message.contains("no events"));

        let zero = failure("outcomes 0\n");
        assert_eq!(zero.class, ErrorClass::Validate);
        assert!(zero.message.contains("at least one outcome"));
    }

    #[test]
    fn limits_are_enforced() {
        let ast = parse_model(RX).unwrap();
        let err = elaborate_with_limits(
            &ast,
            Limits {
                max_outcomes: 2,
                max_events: 20,
            },
        )
        .unwrap_err();
        assert_eq!(err.class, ErrorClass::Validate);
        assert_eq!(err.line, 1);
        assert!(err.message.contains("maximum"));

        let err = elaborate_with_limits(
            &ast,
            Limits {
                max_outcomes: 4096,
                max_events: 1,
            },
        )
        .unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("exceed"));
    }
}
