//! The `coevent` command line.
//!
//! [`run`] does all the work and returns the exit code with the text that
//! would be printed, so tests can drive it without a subprocess.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
mod commands;
pub mod error;
mod render;

pub use args::Cli;
pub use error::CliError;

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parsed and rendered output of a command, before format selection.
pub(crate) struct Report {
    pub human: String,
    pub json: serde_json::Value,
}

/// Runs one invocation. `argv[0]` is the program name.
///
/// Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(report) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("reports serialize")
            } else {
                report.human
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = if cli.json {
                let v = serde_json::json!({ "error": e.message, "what": e.what, "input": e.input });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("errors serialize"))
            } else {
                format!("error: {e}\n")
            };
            Outcome { code: 1, stdout: String::new(), stderr }
        }
    }
}
