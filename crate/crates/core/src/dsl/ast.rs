//! Syntax trees for models and queries.
//!
//! Nodes carry source positions for diagnostics, but equality ignores them:
//! a parse → render → parse round trip compares equal even though the
//! rendered text lays statements out differently.

use crate::rational::Rational;

/// 1-based line/column of a token in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct ModelAst {
    pub outcomes: usize,
    pub outcomes_pos: Pos,
    pub events: Vec<EventDecl>,
    pub causes: Vec<CauseDecl>,
}

impl PartialEq for ModelAst {
    fn eq(&self, other: &Self) -> bool {
        self.outcomes == other.outcomes
            && self.events == other.events
            && self.causes == other.causes
    }
}

impl Eq for ModelAst {}

#[derive(Debug, Clone)]
pub struct EventDecl {
    pub name: String,
    /// Sorted, deduplicated outcome indices.
    pub members: Vec<usize>,
    pub pos: Pos,
}

impl PartialEq for EventDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.members == other.members
    }
}

impl Eq for EventDecl {}

#[derive(Debug, Clone)]
pub struct CauseDecl {
    pub target: String,
    pub condition: ConditionAst,
    pub value: Rational,
    pub pos: Pos,
}

impl PartialEq for CauseDecl {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target
            && self.condition == other.condition
            && self.value == other.value
    }
}

impl Eq for CauseDecl {}

/// The conditioning part of a cause statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionAst {
    /// `*`: the trivial condition Ω (level-1 statements only).
    Star,
    /// A conjunction of earlier-event literals.
    All(Vec<CondLiteral>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondLiteral {
    pub negated: bool,
    pub name: String,
}

/// An event expression inside a query.
#[derive(Debug, Clone)]
pub enum ExprAst {
    Name {
        name: String,
        pos: Pos,
    },
    /// An outcome-set literal such as `{0, 2}`.
    Set {
        members: Vec<usize>,
        pos: Pos,
    },
    Not(Box<ExprAst>),
    And(Box<ExprAst>, Box<ExprAst>),
    Or(Box<ExprAst>, Box<ExprAst>),
}

impl PartialEq for ExprAst {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExprAst::Name { name: a, .. }, ExprAst::Name { name: b, .. }) => a == b,
            (ExprAst::Set { members: a, .. }, ExprAst::Set { members: b, .. }) => a == b,
            (ExprAst::Not(a), ExprAst::Not(b)) => a == b,
            (ExprAst::And(a1, a2), ExprAst::And(b1, b2)) => a1 == b1 && a2 == b2,
            (ExprAst::Or(a1, a2), ExprAst::Or(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

impl Eq for ExprAst {}

/// A named event or its complement, as written in `do(...)` lists and
/// hypothesis lists.
#[derive(Debug, Clone)]
pub struct LitAst {
    pub negated: bool,
    pub name: String,
    pub pos: Pos,
}

impl PartialEq for LitAst {
    fn eq(&self, other: &Self) -> bool {
        self.negated == other.negated && self.name == other.name
    }
}

impl Eq for LitAst {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAst {
    /// `truth <expr> | <expr>`
    Truth { target: ExprAst, condition: ExprAst },
    /// `belief <expr>` or `belief <expr> | <expr>`
    Belief {
        target: ExprAst,
        condition: Option<ExprAst>,
    },
    /// `belief <expr> | do(<lit>, ...), <expr>?`
    BeliefDo {
        target: ExprAst,
        interventions: Vec<LitAst>,
        given: Option<ExprAst>,
    },
    /// `bayes <lit>, ... given <expr>; ...` — more than one data expression
    /// means sequential updating.
    Bayes {
        hypotheses: Vec<LitAst>,
        data: Vec<ExprAst>,
    },
}
