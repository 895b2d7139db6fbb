use std::fmt::Display;

use thiserror::Error;

/// A domain failure, with the input that caused it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} `{input}`: {message}")]
pub struct CliError {
    pub what: &'static str,
    pub input: String,
    pub message: String,
}

impl CliError {
    pub fn new(what: &'static str, input: impl Into<String>, message: impl Display) -> Self {
        Self { what, input: input.into(), message: message.to_string() }
    }
}

/// `map_err` adapter that tags an error with the offending input.
pub fn at<'a, E: Display>(what: &'static str, input: &'a str) -> impl FnOnce(E) -> CliError + 'a {
    move |e| CliError::new(what, input, e)
}
