//! Text formats for networks, machines and traces.

mod lex;
pub mod machine;
pub mod network;
pub mod trace;

use std::fmt;

use thiserror::Error;

pub use machine::{emit_machine, parse_machine};
pub use network::{emit_network, parse_network};
pub use trace::{check_alternation, parse_trace, write_trace, TraceRecord};

/// A parse diagnostic. Line numbers start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Renders a token, quoting it when a bare form would not lex back to the
/// same token.
pub fn quote_token(token: &str) -> String {
    let needs = token == "~"
        || token.starts_with('#')
        || token.chars().any(|c| matches!(c, '(' | ')' | ',' | ';' | '"' | '\\') || c.is_whitespace());
    if !needs {
        return token.to_string();
    }
    let mut out = String::with_capacity(token.len() + 2);
    out.push('"');
    for c in token.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}
