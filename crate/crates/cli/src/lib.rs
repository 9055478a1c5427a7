//! Command-line front end: argument parsing, dispatch and report rendering.

pub mod args;
pub mod commands;
pub mod output;
pub mod selftest;

use clap::Parser;

use crate::args::{normalize_args, Cli};
use crate::commands::{dispatch, error_kind, exit_code};
use crate::output::ErrorReport;

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (program name first) without touching the process.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = normalize_args(argv);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("json");
                s.push('\n');
                s
            } else {
                r.text
            };
            let failed = r.json.get("passed").and_then(|v| v.as_bool()) == Some(false);
            Outcome { code: if failed { 1 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if cli.json {
                let rep = ErrorReport { error: error_kind(&e).into(), message: e.to_string() };
                serde_json::to_string_pretty(&rep).expect("json") + "\n"
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}
