//! Text format for causal-space models and queries.
//!
//! Models are line-oriented: an `outcomes <M>` declaration, `event <NAME> =
//! {<i>, ...}` definitions in causal order, and `cause P(<NAME> | <cond>) =
//! <value>` statements covering every uncertain pair. Conditions are `*`
//! (the trivial condition, level 1 only) or a conjunction of earlier-event
//! literals denoting exactly one atom of the preceding level's algebra.
//! `#` starts a comment; blank lines are ignored.
//!
//! Queries are single statements: `truth`, `belief` (optionally conditional
//! or interventional via `| do(...)`), and `bayes ... given ...` with `;`
//! separating sequential observations. Expressions use `~` (complement),
//! `&` (intersection), and within parentheses `|` (union); `{0, 2}` is an
//! outcome-set literal.
//!
//! Every failure carries a 1-based source position and a coarse class, so
//! front ends can point at the offending token.

mod ast;
mod elaborate;
mod eval;
mod lex;
mod parse;
mod render;

use std::fmt;

use thiserror::Error;

pub use ast::{
    CauseDecl, CondLiteral, ConditionAst, EventDecl, ExprAst, LitAst, ModelAst, Pos, QueryAst,
};
pub use elaborate::{NameTable, elaborate, elaborate_with_limits};
#[cfg(feature = "parallel")]
pub use eval::eval_queries_parallel;
pub use eval::{QueryOutcome, eval_queries, eval_queries_sequential, eval_query};
pub use parse::{parse_model, parse_query};
pub use render::{model_to_ast, render};

/// Which stage of processing rejected the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Lex,
    Parse,
    Resolve,
    Validate,
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorClass::Lex => "lex",
            ErrorClass::Parse => "parse",
            ErrorClass::Resolve => "resolve",
            ErrorClass::Validate => "validate",
        })
    }
}

/// An error anchored to a position in the source text (1-based line and
/// column).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {class} error: {message}")]
pub struct SourceError {
    pub line: usize,
    pub col: usize,
    pub class: ErrorClass,
    pub message: String,
}

impl SourceError {
    pub(crate) fn new(class: ErrorClass, pos: Pos, message: impl Into<String>) -> Self {
        SourceError {
            line: pos.line,
            col: pos.col,
            class,
            message: message.into(),
        }
    }

    pub fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }
}
