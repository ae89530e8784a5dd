use super::parse::line_of;
use super::serialize::serialize_with_map;
use super::{Diagnostic, Severity};
use crate::fuzzy::FuzzySystem;

/// One error per broken invariant. Line numbers refer to the canonical
/// serialization of `sys`.
pub fn validate_fis(sys: &FuzzySystem) -> Vec<Diagnostic> {
    let violations = sys.violations();
    if violations.is_empty() {
        return Vec::new();
    }
    let (_, map) = serialize_with_map(sys);
    violations
        .into_iter()
        .map(|v| {
            let line = line_of(&map, v.location);
            Diagnostic::new(Severity::Error, line, v.to_string())
        })
        .collect()
}
