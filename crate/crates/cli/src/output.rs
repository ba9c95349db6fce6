//! Result rendering: text lines for humans, one JSON object per line for
//! machines. JSON output is deterministic byte-for-byte for a fixed model
//! and query list: field order is fixed by the struct, floats go through
//! the shortest-round-trip formatter, and nothing depends on map ordering.

use causalspace::Rational;
use causalspace::dsl::QueryOutcome;
use causalspace::rational::{decimal_string, rational_to_f64};
use serde::Serialize;
use serde_json::{Number, Value, json};

use crate::Render;

/// Decimal form at the given precision, `~`-prefixed iff rounding lost
/// anything.
pub fn float_string(r: &Rational, precision: usize) -> String {
    let (text, exact) = decimal_string(r, precision);
    if exact { text } else { format!("~{text}") }
}

fn belief_string(r: &Rational, render: Render, precision: usize) -> String {
    match render {
        Render::Exact => r.to_string(),
        Render::Float => float_string(r, precision),
        Render::Both => format!("{} ({})", r, float_string(r, precision)),
    }
}

/// The text form of one outcome, without the `query =>` prefix.
pub fn outcome_string(outcome: &QueryOutcome, render: Render, precision: usize) -> String {
    match outcome {
        QueryOutcome::Truth(t) => t.to_string(),
        QueryOutcome::Belief(r) => belief_string(r, render, precision),
        QueryOutcome::Posterior { hypotheses, steps } => steps
            .iter()
            .map(|step| {
                let cells: Vec<String> = hypotheses
                    .iter()
                    .zip(step.values())
                    .map(|(label, value)| {
                        format!("{label}: {}", belief_string(value, render, precision))
                    })
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// One line of `--format json` output. Field order is the public contract.
#[derive(Serialize)]
pub struct QueryRecord<'a> {
    pub query: &'a str,
    pub kind: Option<&'static str>,
    pub exact: Option<Value>,
    pub float: Option<Value>,
    pub error: Option<String>,
}

impl<'a> QueryRecord<'a> {
    pub fn success(query: &'a str, kind: &'static str, outcome: &QueryOutcome) -> Self {
        let (exact, float) = match outcome {
            QueryOutcome::Truth(t) => (Some(json!(t.to_string())), None),
            QueryOutcome::Belief(r) => (
                Some(json!(r.to_string())),
                Some(Value::Number(float_number(r))),
            ),
            QueryOutcome::Posterior { hypotheses, steps } => {
                let table = |cell: fn(&Rational) -> Value| -> Value {
                    let rows: Vec<Value> = steps
                        .iter()
                        .map(|s| {
                            hypotheses
                                .iter()
                                .zip(s.values())
                                .map(|(label, value)| (label.clone(), cell(value)))
                                .collect::<serde_json::Map<_, _>>()
                                .into()
                        })
                        .collect();
                    Value::Array(rows)
                };
                let exact = table(|v| json!(v.to_string()));
                let float = table(|v| Value::Number(float_number(v)));
                (Some(exact), Some(float))
            }
        };
        QueryRecord {
            query,
            kind: Some(kind),
            exact,
            float,
            error: None,
        }
    }

    pub fn failure(query: &'a str, kind: Option<&'static str>, message: String) -> Self {
        QueryRecord {
            query,
            kind,
            exact: None,
            float: None,
            error: Some(message),
        }
    }

    pub fn line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

fn float_number(r: &Rational) -> Number {
    Number::from_f64(rational_to_f64(r)).expect("probabilities are finite")
}
