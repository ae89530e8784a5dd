//! The `.fis` interchange format.
//!
//! INI-like text: `[System]`, `[Input1..N]`, `[Output1..M]` and `[Rules]`
//! sections of `key=value` lines, single-quoted strings and bracketed number
//! lists. `%` and `#` start comment lines. See `docs/fis-grammar.md`.

mod document;
mod number;
mod parse;
mod serialize;
mod validate;

use std::fmt;

pub use document::{Entry, FisDocument, Section};
pub use number::{format_number, parse_number};
pub use parse::{parse_fis, parse_fis_full, FisParse};
pub use serialize::serialize_fis;
pub use validate::validate_fis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 1-based line in the text the diagnostic refers to.
    pub line: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn new(severity: Severity, line: usize, message: impl Into<String>) -> Self {
        Self { severity, line, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "line {}: {sev}: {}", self.line, self.message)
    }
}
