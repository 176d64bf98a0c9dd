//! Command-line front end for fraccore: expression inputs, operator
//! application, solver runs and CSV output.
//!
//! [`run_cli`] is the whole program; `main` only wires it to the process.
//! Exit codes: 0 success, 1 usage or input error, 2 numeric or domain error.

pub mod commands;
pub mod csvio;
pub mod expr;

use std::io::Write;

use clap::Parser;
use fraccore::FracError;
use thiserror::Error;

pub use commands::Cli;
pub use expr::{eval_expression, parse_expression, EvalError, Expr, ParseError};

/// Overrides the default series tolerance for `mlf` and `wright`.
pub const TOL_ENV: &str = "FRACCORE_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("expression: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Numeric(#[from] FracError),
    /// Operator preconditions checked before any computation.
    #[error("{0}")]
    Undefined(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) | CliError::Parse(_) => 1,
            CliError::Eval(_) | CliError::Numeric(_) | CliError::Undefined(_) => 2,
        }
    }
}

/// Run one invocation. `argv[0]` is the program name. Diagnostics go to
/// `err` prefixed with `error:`.
pub fn run_cli<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = argv.iter().map(|s| s.as_ref());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let text = e.render().to_string();
            let text = text.strip_prefix("error: ").unwrap_or(&text);
            let _ = write!(err, "error: {text}");
            return code;
        }
    };
    let tol = std::env::var(TOL_ENV).ok();
    match commands::execute(&cli, tol.as_deref(), out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
