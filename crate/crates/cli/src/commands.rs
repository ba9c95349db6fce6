//! The four subcommands. Model problems exit 2, query problems exit 1,
//! anything malformed on the command line itself never reaches this module.

use std::io::{BufRead, Write};
use std::path::Path;

use causalspace::dsl::{
    NameTable, QueryAst, QueryOutcome, elaborate_with_limits, eval_queries, model_to_ast,
    parse_model, parse_query, render,
};
use causalspace::{CausalSpace, Error, Limits};
use serde::Serialize;

use crate::output::{QueryRecord, outcome_string};
use crate::{EXIT_MODEL, EXIT_OK, EXIT_QUERY, EXIT_USAGE, Format, LimitArgs, StyleArgs};

/// A failed model load, tagged with the exit code it should produce.
struct LoadError {
    code: u8,
    diagnostic: String,
}

impl LoadError {
    fn report(self) -> u8 {
        eprintln!("{}", self.diagnostic);
        self.code
    }
}

fn load(path: &Path, limits: LimitArgs) -> Result<(CausalSpace, NameTable), LoadError> {
    let limits: Limits = limits.resolve().map_err(|msg| LoadError {
        code: EXIT_USAGE,
        diagnostic: format!("error: {msg}"),
    })?;
    let model_err = |diagnostic: String| LoadError {
        code: EXIT_MODEL,
        diagnostic,
    };
    let text = std::fs::read_to_string(path)
        .map_err(|err| model_err(format!("error: cannot read {}: {err}", path.display())))?;
    let located = |err: causalspace::SourceError| model_err(format!("{}:{err}", path.display()));
    let ast = parse_model(&text).map_err(located)?;
    elaborate_with_limits(&ast, limits).map_err(located)
}

pub fn check(model: &Path, limits: LimitArgs) -> u8 {
    let (space, _) = match load(model, limits) {
        Ok(loaded) => loaded,
        Err(err) => return err.report(),
    };
    let counts: Vec<String> = (0..=space.len())
        .map(|level| space.sequence().atoms(level).len().to_string())
        .collect();
    println!(
        "OK: {} outcomes, {} events, atoms per level {}",
        space.universe().size(),
        space.len(),
        counts.join("/")
    );
    EXIT_OK
}

fn kind_of(ast: &QueryAst) -> &'static str {
    match ast {
        QueryAst::Truth { .. } => "truth",
        QueryAst::Belief { .. } | QueryAst::BeliefDo { .. } => "belief",
        QueryAst::Bayes { .. } => "posterior",
    }
}

/// Queries from `--queries FILE` (one per line, `#` comments) run before the
/// inline ones.
fn gather_queries(inline: &[String], file: Option<&Path>) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|err| format!("error: cannot read {}: {err}", path.display()))?;
        for line in text.lines() {
            let stripped = line.split('#').next().unwrap_or("").trim();
            if !stripped.is_empty() {
                out.push(stripped.to_owned());
            }
        }
    }
    out.extend(inline.iter().cloned());
    Ok(out)
}

pub fn query(
    model: &Path,
    inline: &[String],
    file: Option<&Path>,
    format: Format,
    style: StyleArgs,
    limits: LimitArgs,
) -> u8 {
    let (space, names) = match load(model, limits) {
        Ok(loaded) => loaded,
        Err(err) => return err.report(),
    };
    let texts = match gather_queries(inline, file) {
        Ok(texts) => texts,
        Err(diagnostic) => {
            eprintln!("{diagnostic}");
            return EXIT_MODEL;
        }
    };
    if texts.is_empty() {
        eprintln!("error: no queries given (pass QUERY arguments or --queries FILE)");
        return EXIT_USAGE;
    }

    let parsed: Vec<Result<QueryAst, causalspace::SourceError>> =
        texts.iter().map(|t| parse_query(t)).collect();
    let asts: Vec<QueryAst> = parsed
        .iter()
        .filter_map(|p| p.as_ref().ok().cloned())
        .collect();
    let mut evaluated = eval_queries(&space, &names, &asts).into_iter();

    let mut failed = false;
    for (text, parse_result) in texts.iter().zip(&parsed) {
        let result: Result<(QueryOutcome, &'static str), (Option<&'static str>, String)> =
            match parse_result {
                Ok(ast) => match evaluated.next().expect("one result per parsed query") {
                    Ok(outcome) => Ok((outcome, kind_of(ast))),
                    Err(err) => Err((Some(kind_of(ast)), err.to_string())),
                },
                Err(err) => Err((None, err.to_string())),
            };
        match (&result, format) {
            (Ok((outcome, kind)), Format::Json) => {
                println!("{}", QueryRecord::success(text, kind, outcome).line());
            }
            (Ok((outcome, _)), Format::Text) => {
                println!(
                    "{text} => {}",
                    outcome_string(outcome, style.render, style.precision)
                );
            }
            (Err((kind, message)), Format::Json) => {
                failed = true;
                println!(
                    "{}",
                    QueryRecord::failure(text, *kind, message.clone()).line()
                );
            }
            (Err((_, message)), Format::Text) => {
                failed = true;
                println!("{text} => error: {message}");
            }
        }
    }
    if failed { EXIT_QUERY } else { EXIT_OK }
}

// The error path is cold and the payloads are the diagnostics.
#[allow(clippy::result_large_err)]
pub fn repl(model: &Path, style: StyleArgs, limits: LimitArgs) -> u8 {
    let (space, names) = match load(model, limits) {
        Ok(loaded) => loaded,
        Err(err) => return err.report(),
    };
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        eprint!("> ");
        let _ = std::io::stderr().flush();
        let Some(Ok(line)) = lines.next() else { break };
        let line = line.trim();
        match line {
            "" => continue,
            ":quit" => break,
            ":model" => print!("{}", render(&model_to_ast(&space, &names))),
            _ => match parse_query(line).map_err(Error::from).and_then(|ast| {
                eval_queries(&space, &names, std::slice::from_ref(&ast))
                    .pop()
                    .expect("one result for one query")
            }) {
                Ok(outcome) => {
                    println!(
                        "{line} => {}",
                        outcome_string(&outcome, style.render, style.precision)
                    );
                }
                Err(err) => eprintln!("error: {err}"),
            },
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct ExportDoc {
    outcomes: usize,
    events: Vec<EventDoc>,
    cause: Vec<CauseDoc>,
    atoms_per_level: Vec<usize>,
}

#[derive(Serialize)]
struct EventDoc {
    name: String,
    members: Vec<usize>,
}

#[derive(Serialize)]
struct CauseDoc {
    level: usize,
    atom_literals: Vec<String>,
    p: String,
}

pub fn export(model: &Path, format: Format, limits: LimitArgs) -> u8 {
    let (space, names) = match load(model, limits) {
        Ok(loaded) => loaded,
        Err(err) => return err.report(),
    };
    match format {
        Format::Text => print!("{}", render(&model_to_ast(&space, &names))),
        Format::Json => {
            let events = names
                .names()
                .iter()
                .enumerate()
                .map(|(i, name)| EventDoc {
                    name: name.clone(),
                    members: space.sequence().event(i + 1).iter().collect(),
                })
                .collect();
            let mut cause = Vec::new();
            for level in 1..=space.len() {
                let atoms = space.sequence().atoms(level - 1);
                for (index, value) in space.table().entries(level) {
                    let atom = &atoms.blocks()[index];
                    let atom_literals = (1..level)
                        .map(|j| {
                            if atom.is_subset(space.sequence().event(j)) {
                                names.name_of(j).to_owned()
                            } else {
                                format!("~{}", names.name_of(j))
                            }
                        })
                        .collect();
                    cause.push(CauseDoc {
                        level,
                        atom_literals,
                        p: value.to_string(),
                    });
                }
            }
            let doc = ExportDoc {
                outcomes: space.universe().size(),
                events,
                cause,
                atoms_per_level: (0..=space.len())
                    .map(|level| space.sequence().atoms(level).len())
                    .collect(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
            );
        }
    }
    EXIT_OK
}
