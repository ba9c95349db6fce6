//! `causalspace`: validate causal-model files, evaluate queries against them
//! (batch or REPL), and export elaborated models.
//!
//! Exit codes are stable: 0 success, 1 a query failed, 2 the model failed to
//! load or validate, 3 usage error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_QUERY: u8 = 1;
pub const EXIT_MODEL: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

const MAX_OUTCOMES_ENV: &str = "CAUSALSPACE_MAX_OUTCOMES";

#[derive(Parser)]
#[command(
    name = "causalspace",
    version,
    about = "Exact queries over finite causal spaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model file and report its shape.
    Check {
        /// Model file (.csp).
        model: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Evaluate queries against a model.
    Query {
        /// Model file (.csp).
        model: PathBuf,
        /// Queries given directly on the command line.
        #[arg(value_name = "QUERY")]
        inline: Vec<String>,
        /// File with one query per line (`#` comments); these run before any
        /// inline queries.
        #[arg(long, value_name = "FILE")]
        queries: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        style: StyleArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Evaluate queries interactively; `:model` reprints the model, `:quit`
    /// leaves.
    Repl {
        /// Model file (.csp).
        model: PathBuf,
        #[command(flatten)]
        style: StyleArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Re-emit the elaborated model, canonically.
    Export {
        /// Model file (.csp).
        model: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

/// How numeric results are written in text output.
#[derive(Clone, Copy, Default, ValueEnum)]
pub enum Render {
    /// Exact rationals only.
    Exact,
    /// Decimal only, `~`-prefixed when rounded.
    Float,
    /// Exact followed by the decimal in parentheses.
    #[default]
    Both,
}

#[derive(Args, Clone, Copy)]
pub struct StyleArgs {
    #[arg(long, value_enum, default_value_t)]
    pub render: Render,
    /// Significant digits for decimal rendering.
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Cap on the universe size (over the CAUSALSPACE_MAX_OUTCOMES
    /// environment variable and the built-in default).
    #[arg(long, value_name = "N")]
    max_outcomes: Option<usize>,
    /// Cap on the number of primitive events.
    #[arg(long, value_name = "N")]
    max_events: Option<usize>,
}

impl LimitArgs {
    /// Flag beats environment beats default.
    fn resolve(self) -> Result<causalspace::Limits, String> {
        let defaults = causalspace::Limits::default();
        let from_env = match std::env::var(MAX_OUTCOMES_ENV) {
            Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
                format!("{MAX_OUTCOMES_ENV} must be a non-negative integer, got `{raw}`")
            })?),
            Err(_) => None,
        };
        Ok(causalspace::Limits {
            max_outcomes: self
                .max_outcomes
                .or(from_env)
                .unwrap_or(defaults.max_outcomes),
            max_events: self.max_events.unwrap_or(defaults.max_events),
        })
    }
}

/// Dying quietly on a closed pipe (`causalspace export m.csp | head`) beats
/// the default panic from `println!`.
fn reset_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    let code = match cli.command {
        Command::Check { model, limits } => commands::check(&model, limits),
        Command::Query {
            model,
            inline,
            queries,
            format,
            style,
            limits,
        } => commands::query(&model, &inline, queries.as_deref(), format, style, limits),
        Command::Repl {
            model,
            style,
            limits,
        } => commands::repl(&model, style, limits),
        Command::Export {
            model,
            format,
            limits,
        } => commands::export(&model, format, limits),
    };
    ExitCode::from(code)
}
