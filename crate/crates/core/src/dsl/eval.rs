//! Query evaluation against an elaborated space.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::ast::{ExprAst, LitAst, QueryAst};
use super::elaborate::NameTable;
use super::{ErrorClass, SourceError};
use crate::Error;
use crate::algebra::{Event, TruthValue, truth};
use crate::belief::{HypothesisSet, PosteriorVector};
use crate::rational::Rational;
use crate::space::{CausalSpace, Literal};

/// The value of one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryOutcome {
    Truth(TruthValue),
    Belief(Rational),
    /// One posterior per observation step (a single step for plain `bayes`),
    /// with the hypothesis labels as written in the query.
    Posterior {
        hypotheses: Vec<String>,
        steps: Vec<PosteriorVector>,
    },
}

fn resolve_expr(
    space: &CausalSpace,
    names: &NameTable,
    expr: &ExprAst,
) -> Result<Event, SourceError> {
    match expr {
        ExprAst::Name { name, pos } => match names.level_of(name) {
            Some(level) => Ok(space.sequence().event(level).clone()),
            None => Err(SourceError::new(
                ErrorClass::Resolve,
                *pos,
                format!("unknown event name `{name}`"),
            )),
        },
        ExprAst::Set { members, pos } => {
            Event::from_indices(space.universe(), members.iter().copied())
                .map_err(|e| SourceError::new(ErrorClass::Validate, *pos, e.to_string()))
        }
        ExprAst::Not(inner) => Ok(resolve_expr(space, names, inner)?.complement()),
        ExprAst::And(a, b) => {
            Ok(resolve_expr(space, names, a)?.intersection(&resolve_expr(space, names, b)?))
        }
        ExprAst::Or(a, b) => {
            Ok(resolve_expr(space, names, a)?.union(&resolve_expr(space, names, b)?))
        }
    }
}

fn resolve_level(names: &NameTable, literal: &LitAst) -> Result<usize, SourceError> {
    names.level_of(&literal.name).ok_or_else(|| {
        SourceError::new(
            ErrorClass::Resolve,
            literal.pos,
            format!("unknown event name `{}`", literal.name),
        )
    })
}

pub fn eval_query(
    space: &CausalSpace,
    names: &NameTable,
    query: &QueryAst,
) -> Result<QueryOutcome, Error> {
    match query {
        QueryAst::Truth { target, condition } => {
            let a = resolve_expr(space, names, target)?;
            let b = resolve_expr(space, names, condition)?;
            Ok(QueryOutcome::Truth(truth(&a, &b)?))
        }
        QueryAst::Belief { target, condition } => {
            let a = resolve_expr(space, names, target)?;
            let b = match condition {
                Some(expr) => resolve_expr(space, names, expr)?,
                None => space.omega(),
            };
            Ok(QueryOutcome::Belief(space.belief(&a, &b)?))
        }
        QueryAst::BeliefDo {
            target,
            interventions,
            given,
        } => {
            let literals = interventions
                .iter()
                .map(|l| {
                    let level = resolve_level(names, l)?;
                    Ok(if l.negated {
                        Literal::negative(level)
                    } else {
                        Literal::positive(level)
                    })
                })
                .collect::<Result<Vec<_>, SourceError>>()?;
            let target = resolve_expr(space, names, target)?;
            let given = match given {
                Some(expr) => resolve_expr(space, names, expr)?,
                None => space.omega(),
            };
            Ok(QueryOutcome::Belief(
                space.belief_do(&literals, &target, &given)?,
            ))
        }
        QueryAst::Bayes { hypotheses, data } => {
            let mut events = Vec::with_capacity(hypotheses.len());
            let mut labels = Vec::with_capacity(hypotheses.len());
            for literal in hypotheses {
                let level = resolve_level(names, literal)?;
                let event = space.sequence().event(level);
                events.push(if literal.negated {
                    event.complement()
                } else {
                    event.clone()
                });
                labels.push(if literal.negated {
                    format!("~{}", literal.name)
                } else {
                    literal.name.clone()
                });
            }
            let set = HypothesisSet::new(space, events)?;
            let observed = data
                .iter()
                .map(|d| resolve_expr(space, names, d))
                .collect::<Result<Vec<_>, _>>()?;
            let steps = if observed.len() == 1 {
                vec![space.bayes_posterior(&set, &observed[0])?]
            } else {
                space.sequential_posterior(&set, &observed)?
            };
            Ok(QueryOutcome::Posterior {
                hypotheses: labels,
                steps,
            })
        }
    }
}

/// Evaluates a batch, fanning out across threads when the `parallel` feature
/// is active and the batch is big enough to be worth it.
pub fn eval_queries(
    space: &CausalSpace,
    names: &NameTable,
    queries: &[QueryAst],
) -> Vec<Result<QueryOutcome, Error>> {
    #[cfg(feature = "parallel")]
    if queries.len() > 1 {
        return eval_queries_parallel(space, names, queries);
    }
    eval_queries_sequential(space, names, queries)
}

pub fn eval_queries_sequential(
    space: &CausalSpace,
    names: &NameTable,
    queries: &[QueryAst],
) -> Vec<Result<QueryOutcome, Error>> {
    queries
        .iter()
        .map(|q| eval_query(space, names, q))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn eval_queries_parallel(
    space: &CausalSpace,
    names: &NameTable,
    queries: &[QueryAst],
) -> Vec<Result<QueryOutcome, Error>> {
    queries
        .par_iter()
        .map(|q| eval_query(space, names, q))
        .collect()
}
