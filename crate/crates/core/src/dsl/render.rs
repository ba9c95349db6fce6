//! Canonical model rendering.
//!
//! [`model_to_ast`] reconstructs a syntax tree from a built space: events in
//! level order with sorted members, and one cause statement per *stored*
//! (uncertain) pair, its condition spelled as the full literal conjunction
//! identifying the atom. [`render`] prints any tree in the grammar the
//! parser accepts, so `parse_model(render(ast)) == ast` and re-elaborating a
//! rendered model reproduces the causal table exactly.

use std::fmt::Write;

use super::ast::{CauseDecl, CondLiteral, ConditionAst, EventDecl, ModelAst, Pos};
use super::elaborate::NameTable;
use crate::space::CausalSpace;

pub fn render(ast: &ModelAst) -> String {
    let mut out = String::new();
    writeln!(out, "outcomes {}", ast.outcomes).unwrap();
    for event in &ast.events {
        let members = event
            .members
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "event {} = {{{members}}}", event.name).unwrap();
    }
    for cause in &ast.causes {
        let condition = match &cause.condition {
            ConditionAst::Star => "*".to_owned(),
            ConditionAst::All(literals) => literals
                .iter()
                .map(|l| {
                    if l.negated {
                        format!("~{}", l.name)
                    } else {
                        l.name.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" & "),
        };
        writeln!(
            out,
            "cause P({} | {condition}) = {}",
            cause.target, cause.value
        )
        .unwrap();
    }
    out
}

/// The canonical syntax tree of a built space.
pub fn model_to_ast(space: &CausalSpace, names: &NameTable) -> ModelAst {
    let sequence = space.sequence();
    let events = (1..=sequence.len())
        .map(|level| EventDecl {
            name: names.name_of(level).to_owned(),
            members: sequence.event(level).iter().collect(),
            pos: Pos::default(),
        })
        .collect();
    let mut causes = Vec::new();
    for level in 1..=sequence.len() {
        let atoms = sequence.atoms(level - 1);
        for (index, value) in space.table().entries(level) {
            let atom = &atoms.blocks()[index];
            let condition = if level == 1 {
                ConditionAst::Star
            } else {
                ConditionAst::All(
                    (1..level)
                        .map(|j| CondLiteral {
                            negated: !atom.is_subset(sequence.event(j)),
                            name: names.name_of(j).to_owned(),
                        })
                        .collect(),
                )
            };
            causes.push(CauseDecl {
                target: names.name_of(level).to_owned(),
                condition,
                value: value.clone(),
                pos: Pos::default(),
            });
        }
    }
    ModelAst {
        outcomes: space.universe().size(),
        outcomes_pos: Pos::default(),
        events,
        causes,
    }
}
