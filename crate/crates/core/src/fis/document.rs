use super::{Diagnostic, Severity};

/// One `key=value` line, or a bare line inside `[Rules]` (empty key).
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub header: String,
    pub line: usize,
    /// Last line belonging to this section (header line when empty).
    pub end_line: usize,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }
}

/// Sectioned key/value view of a `.fis` text, in source order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FisDocument {
    pub sections: Vec<Section>,
}

impl FisDocument {
    /// Splits `text` into sections. Lines that fit no production are reported
    /// and dropped; everything else is kept verbatim for interpretation.
    pub fn lex(text: &str) -> (Self, Vec<Diagnostic>) {
        let mut doc = FisDocument::default();
        let mut diags = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('%') || s.starts_with('#') {
                continue;
            }
            if let Some(header) = s.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
                if let Some(prev) = doc.sections.last_mut() {
                    prev.end_line = line - 1;
                }
                doc.sections.push(Section {
                    header: header.trim().to_owned(),
                    line,
                    end_line: line,
                    entries: Vec::new(),
                });
                continue;
            }
            let Some(section) = doc.sections.last_mut() else {
                diags.push(Diagnostic::new(Severity::Error, line, "content before the first section header"));
                continue;
            };
            section.end_line = line;
            if section.header == "Rules" {
                if s.contains('=') {
                    diags.push(Diagnostic::new(Severity::Error, line, "key=value line inside [Rules]"));
                } else {
                    section.entries.push(Entry { key: String::new(), value: s.to_owned(), line });
                }
                continue;
            }
            match s.split_once('=') {
                Some((key, value)) if is_key(key.trim()) => section.entries.push(Entry {
                    key: key.trim().to_owned(),
                    value: value.trim().to_owned(),
                    line,
                }),
                _ => diags.push(Diagnostic::new(Severity::Error, line, format!("malformed line '{s}'"))),
            }
        }
        if let (Some(last), n) = (doc.sections.last_mut(), text.lines().count()) {
            // trailing blank/comment lines still belong to the last section
            last.end_line = last.end_line.max(n);
        }
        (doc, diags)
    }

    pub fn section(&self, header: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.header == header)
    }
}

fn is_key(k: &str) -> bool {
    !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `'text'` -> `text`; unquoted values are accepted as-is.
pub fn unquote(s: &str) -> &str {
    s.strip_prefix('\'').and_then(|v| v.strip_suffix('\'')).unwrap_or(s)
}
