/// Shortest decimal that round-trips after rounding to 6 significant digits.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let r: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    let a = r.abs();
    if !(1e-4..1e6).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Integer, decimal or exponent form. Rejects `inf`/`nan` spellings.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    let ok = !s.is_empty()
        && s.chars().all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
        && s.chars().any(|c| c.is_ascii_digit());
    if !ok {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// `[1 2.5, 3]` style list: whitespace and/or comma separated.
pub fn parse_list(s: &str) -> Option<Vec<f64>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(parse_number)
        .collect()
}

pub fn format_list(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|&v| format_number(v)).collect();
    format!("[{}]", parts.join(" "))
}
