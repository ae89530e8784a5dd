use std::collections::{BTreeMap, HashMap};

use super::document::{unquote, FisDocument, Section};
use super::number::{parse_list, parse_number};
use super::{Diagnostic, Severity};
use crate::fuzzy::{
    Aggregation, AndMethod, Connective, Defuzzification, Domain, FuzzySystem, Implication, LinguisticVariable,
    Location, MembershipFunction, OrMethod, Rule, Term, DEFAULT_RESOLUTION,
};

/// Maps system locations to the line that defines them.
pub(crate) type SourceMap = HashMap<Location, usize>;

/// Keys whose lines are recorded so violations can cite them.
pub(crate) const SYSTEM_KEYS: [&str; 5] = ["Name", "NumInputs", "NumOutputs", "NumRules", "Resolution"];
pub(crate) const VARIABLE_KEYS: [&str; 3] = ["Name", "Range", "NumMFs"];

/// Line of `loc`, falling back to enclosing locations, then line 1.
pub(crate) fn line_of(map: &SourceMap, loc: Location) -> usize {
    let mut cur = Some(loc);
    while let Some(l) = cur {
        if let Some(&line) = map.get(&l) {
            return line;
        }
        cur = l.parent();
    }
    1
}

fn record_keys(map: &mut SourceMap, s: &Section, keys: &[&'static str], loc: impl Fn(&'static str) -> Location) {
    for &k in keys {
        if let Some(e) = s.get(k) {
            map.insert(loc(k), e.line);
        }
    }
}

/// Outcome of reading a `.fis` text: the system when no error was found,
/// plus every diagnostic (warnings included) in line order.
#[derive(Debug, Clone)]
pub struct FisParse {
    pub system: Option<FuzzySystem>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Reads a Mamdani `.fis` document. Fails with all error-level diagnostics.
pub fn parse_fis(text: &str) -> Result<FuzzySystem, Vec<Diagnostic>> {
    let parsed = parse_fis_full(text);
    match parsed.system {
        Some(sys) => Ok(sys),
        None => Err(parsed.diagnostics.into_iter().filter(Diagnostic::is_error).collect()),
    }
}

pub fn parse_fis_full(text: &str) -> FisParse {
    let (doc, mut diags) = FisDocument::lex(text);
    let mut p = Parser { diags: Vec::new(), map: SourceMap::new() };
    let system = p.document(&doc);
    diags.append(&mut p.diags);

    let system = system.filter(|_| !diags.iter().any(Diagnostic::is_error)).and_then(|sys| {
        let violations = sys.violations();
        if violations.is_empty() {
            return Some(sys);
        }
        for v in violations {
            let line = line_of(&p.map, v.location);
            diags.push(Diagnostic::new(Severity::Error, line, v.to_string()));
        }
        None
    });
    diags.sort_by_key(|d| d.line);
    FisParse { system, diagnostics: diags }
}

struct Parser {
    diags: Vec<Diagnostic>,
    map: SourceMap,
}

struct VarSection<'a> {
    number: usize,
    section: &'a Section,
}

impl Parser {
    fn error(&mut self, line: usize, msg: impl Into<String>) {
        self.diags.push(Diagnostic::new(Severity::Error, line, msg));
    }

    fn warn(&mut self, line: usize, msg: impl Into<String>) {
        self.diags.push(Diagnostic::new(Severity::Warning, line, msg));
    }

    fn document(&mut self, doc: &FisDocument) -> Option<FuzzySystem> {
        let mut system: Option<&Section> = None;
        let mut rules: Option<&Section> = None;
        let mut inputs = BTreeMap::new();
        let mut outputs = BTreeMap::new();
        for section in &doc.sections {
            let h = section.header.as_str();
            let slot = if h == "System" {
                Some(&mut system)
            } else if h == "Rules" {
                Some(&mut rules)
            } else {
                None
            };
            if let Some(slot) = slot {
                if slot.is_some() {
                    self.error(section.line, format!("duplicate [{h}] section"));
                } else {
                    *slot = Some(section);
                }
                continue;
            }
            let numbered = h
                .strip_prefix("Input")
                .map(|n| (n, &mut inputs))
                .or_else(|| h.strip_prefix("Output").map(|n| (n, &mut outputs)));
            match numbered {
                Some((n, map)) => match n.parse::<usize>() {
                    Ok(k) if k >= 1 => {
                        if map.insert(k, VarSection { number: k, section }).is_some() {
                            self.error(section.line, format!("duplicate [{h}] section"));
                        }
                    }
                    _ => self.error(section.line, format!("bad section number in [{h}]")),
                },
                None => self.warn(section.line, format!("unknown section [{h}] ignored")),
            }
        }

        let Some(system_section) = system else {
            self.error(1, "missing [System] section");
            return None;
        };
        self.map.insert(Location::System, system_section.line);
        record_keys(&mut self.map, system_section, &SYSTEM_KEYS, Location::SystemKey);
        if let Some(e) = system_section.get("DefuzzMethod") {
            self.map.insert(Location::SystemKey("DefuzzMethod"), e.line);
        }
        let mut sys = self.system_section(system_section)?;

        sys.inputs = self.variables(&inputs, "Input", true);
        sys.outputs = self.variables(&outputs, "Output", false);
        self.check_count(system_section, "NumInputs", inputs.len(), "[Input] sections");
        self.check_count(system_section, "NumOutputs", outputs.len(), "[Output] sections");

        match rules {
            Some(section) => {
                sys.rules = self.rules(section, sys.inputs.len(), sys.outputs.len());
                self.check_count(system_section, "NumRules", section.entries.len(), "rule lines");
            }
            None => self.error(system_section.line, "missing [Rules] section"),
        }
        Some(sys)
    }

    fn check_count(&mut self, section: &Section, key: &str, actual: usize, what: &str) {
        match section.get(key) {
            Some(e) => match parse_count(&e.value) {
                Some(n) if n == actual => {}
                Some(n) => self.error(e.line, format!("{key}={n} but found {actual} {what}")),
                None => self.error(e.line, format!("{key} must be a nonnegative integer, got '{}'", e.value)),
            },
            None => self.error(section.line, format!("[{}] is missing {key}", section.header)),
        }
    }

    fn system_section(&mut self, s: &Section) -> Option<FuzzySystem> {
        let mut sys = FuzzySystem::mamdani("", Vec::new(), Vec::new(), Vec::new());
        let mut named = false;
        let mut typed = false;
        for e in &s.entries {
            let v = unquote(&e.value);
            match e.key.as_str() {
                "Name" => {
                    sys.name = v.to_owned();
                    named = true;
                }
                "Type" => {
                    typed = true;
                    if !v.eq_ignore_ascii_case("mamdani") {
                        self.error(e.line, format!("unsupported system type '{v}'; only mamdani is supported"));
                    }
                }
                "Version" => {
                    if parse_number(v).is_none() {
                        self.warn(e.line, format!("Version '{v}' is not a number"));
                    }
                }
                "NumInputs" | "NumOutputs" | "NumRules" => {}
                "AndMethod" => match v {
                    "min" => sys.and_method = AndMethod::Min,
                    "prod" => sys.and_method = AndMethod::Prod,
                    _ => self.error(e.line, format!("unsupported AndMethod '{v}'")),
                },
                "OrMethod" => match v {
                    "max" => sys.or_method = OrMethod::Max,
                    "probor" => sys.or_method = OrMethod::Probor,
                    _ => self.error(e.line, format!("unsupported OrMethod '{v}'")),
                },
                "ImpMethod" => match v {
                    "min" => sys.implication = Implication::Min,
                    "prod" => sys.implication = Implication::Prod,
                    _ => self.error(e.line, format!("unsupported ImpMethod '{v}'")),
                },
                "AggMethod" => match v {
                    "max" => sys.aggregation = Aggregation::Max,
                    "sum" => sys.aggregation = Aggregation::Sum,
                    _ => self.error(e.line, format!("unsupported AggMethod '{v}'")),
                },
                "DefuzzMethod" => match v {
                    "centroid" => sys.defuzzification = Defuzzification::Centroid,
                    "bisector" | "mom" | "lom" | "som" => self.error(
                        e.line,
                        format!("unsupported DefuzzMethod '{v}'; only centroid is supported"),
                    ),
                    _ => self.error(e.line, format!("unknown DefuzzMethod '{v}'")),
                },
                "Resolution" => match parse_count(v) {
                    Some(n) if n >= 2 => sys.resolution = n,
                    _ => self.error(e.line, format!("Resolution must be an integer >= 2, got '{v}'")),
                },
                other => self.warn(e.line, format!("unknown key '{other}' in [System] ignored")),
            }
        }
        if !named {
            self.error(s.line, "[System] is missing Name");
        }
        if !typed {
            self.warn(s.line, "[System] has no Type; assuming mamdani");
        }
        if sys.resolution == 0 {
            sys.resolution = DEFAULT_RESOLUTION;
        }
        Some(sys)
    }

    fn variables(&mut self, sections: &BTreeMap<usize, VarSection<'_>>, kind: &str, is_input: bool) -> Vec<LinguisticVariable> {
        let mut vars = Vec::new();
        for (pos, vs) in sections.values().enumerate() {
            if vs.number != pos + 1 {
                self.error(vs.section.line, format!("[{kind}{}] out of sequence; expected [{kind}{}]", vs.number, pos + 1));
                continue;
            }
            let loc = if is_input { Location::Input(pos) } else { Location::Output(pos) };
            self.map.insert(loc, vs.section.line);
            if is_input {
                record_keys(&mut self.map, vs.section, &VARIABLE_KEYS, |k| Location::InputKey(pos, k));
            } else {
                record_keys(&mut self.map, vs.section, &VARIABLE_KEYS, |k| Location::OutputKey(pos, k));
            }
            vars.push(self.variable(vs.section, pos, is_input));
        }
        vars
    }

    fn variable(&mut self, s: &Section, vi: usize, is_input: bool) -> LinguisticVariable {
        let mut name = None;
        let mut range = None;
        let mut mfs: BTreeMap<usize, (usize, Option<Term>)> = BTreeMap::new();
        for e in &s.entries {
            match e.key.as_str() {
                "Name" => name = Some(unquote(&e.value).to_owned()),
                "Range" => match parse_list(&e.value).as_deref() {
                    Some(&[lo, hi]) => range = Some(Domain::new(lo, hi)),
                    _ => self.error(e.line, format!("Range must be '[lo hi]', got '{}'", e.value)),
                },
                "NumMFs" => {}
                k if k.starts_with("MF") => match k[2..].parse::<usize>() {
                    Ok(idx) if idx >= 1 => {
                        let term = self.term(&e.value, e.line);
                        if mfs.insert(idx, (e.line, term)).is_some() {
                            self.error(e.line, format!("duplicate {k}"));
                        }
                    }
                    _ => self.error(e.line, format!("bad membership function key '{k}'")),
                },
                other => self.warn(e.line, format!("unknown key '{other}' in [{}] ignored", s.header)),
            }
        }
        if name.is_none() {
            self.error(s.line, format!("[{}] is missing Name", s.header));
        }
        if range.is_none() && s.get("Range").is_none() {
            self.error(s.line, format!("[{}] is missing Range", s.header));
        }
        self.check_count(s, "NumMFs", mfs.len(), "MF lines");

        let mut terms = Vec::with_capacity(mfs.len());
        for (pos, (idx, (line, term))) in mfs.into_iter().enumerate() {
            if idx != pos + 1 {
                self.error(line, format!("MF{idx} out of sequence; expected MF{}", pos + 1));
                continue;
            }
            let loc = if is_input { Location::InputTerm(vi, pos) } else { Location::OutputTerm(vi, pos) };
            self.map.insert(loc, line);
            if let Some(t) = term {
                terms.push(t);
            }
        }
        LinguisticVariable::new(name.unwrap_or_default(), range.unwrap_or(Domain::new(0.0, 1.0)), terms)
    }

    /// `'name':'type',[p1 p2 ...]`
    fn term(&mut self, value: &str, line: usize) -> Option<Term> {
        let parsed = (|| {
            let (name, rest) = value.split_once(':')?;
            let (kind, params) = rest.split_once(',')?;
            Some((unquote(name.trim()), unquote(kind.trim()), params.trim()))
        })();
        let Some((name, kind, params)) = parsed else {
            self.error(line, format!("membership function must be 'name':'type',[params], got '{value}'"));
            return None;
        };
        let Some(p) = parse_list(params) else {
            self.error(line, format!("malformed parameter list '{params}'"));
            return None;
        };
        let expected = match kind {
            "gaussmf" => 2,
            "trimf" => 3,
            "trapmf" => 4,
            other => {
                self.error(line, format!("unsupported membership function type '{other}'"));
                return None;
            }
        };
        if p.len() != expected {
            self.error(line, format!("{kind} takes {expected} parameters, got {}", p.len()));
            return None;
        }
        let mf = match kind {
            "gaussmf" => MembershipFunction::gaussian(p[0], p[1]),
            "trimf" => MembershipFunction::triangular(p[0], p[1], p[2]),
            _ => MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3]),
        };
        Some(Term::new(name, mf))
    }

    fn rules(&mut self, s: &Section, n_in: usize, n_out: usize) -> Vec<Rule> {
        let mut rules = Vec::new();
        for e in &s.entries {
            match parse_rule(&e.value, n_in, n_out) {
                Ok(rule) => {
                    self.map.insert(Location::Rule(rules.len()), e.line);
                    rules.push(rule);
                }
                Err(msg) => self.error(e.line, msg),
            }
        }
        rules
    }
}

fn parse_count(s: &str) -> Option<usize> {
    let s = s.trim();
    s.parse::<usize>().ok().or_else(|| {
        let v = parse_number(s)?;
        (v >= 0.0 && v.fract() == 0.0 && v < 1e15).then_some(v as usize)
    })
}

/// `a1 a2 ...[,] c1 ... (w) : conn`
fn parse_rule(s: &str, n_in: usize, n_out: usize) -> Result<Rule, String> {
    let bad = || format!("malformed rule '{s}'; expected 'a1 .. aN, c1 .. cM (weight) : connective'");
    let (body, conn) = s.rsplit_once(':').ok_or_else(bad)?;
    let connective = match conn.trim() {
        "1" => Connective::And,
        "2" => Connective::Or,
        other => return Err(format!("rule connective must be 1 (AND) or 2 (OR), got '{other}'")),
    };
    let (terms, weight) = body.split_once('(').ok_or_else(bad)?;
    let weight = weight.trim().strip_suffix(')').ok_or_else(bad)?;
    let weight = parse_number(weight).ok_or_else(|| format!("rule weight '{weight}' is not a number"))?;

    let ints = |part: &str| -> Result<Vec<i32>, String> {
        part.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|_| format!("rule term index '{t}' is not an integer")))
            .collect()
    };
    let (antecedent, consequent) = match terms.split_once(',') {
        Some((a, c)) => (ints(a)?, ints(c)?),
        None => {
            let all = ints(terms)?;
            if all.len() < n_in {
                return Err(bad());
            }
            let (a, c) = all.split_at(n_in);
            (a.to_vec(), c.to_vec())
        }
    };
    if antecedent.len() != n_in || consequent.len() != n_out {
        return Err(format!(
            "rule has {}+{} term indices, system has {n_in} inputs and {n_out} outputs",
            antecedent.len(),
            consequent.len()
        ));
    }
    Ok(Rule { antecedent, consequent, weight, connective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rule_forms() {
        let r = parse_rule("1 -2 0, 3 (0.5) : 2", 3, 1).unwrap();
        assert_eq!(r.antecedent, vec![1, -2, 0]);
        assert_eq!(r.consequent, vec![3]);
        assert_eq!(r.weight, 0.5);
        assert_eq!(r.connective, Connective::Or);
        let legacy = parse_rule("1 2 3 (1) : 1", 2, 1).unwrap();
        assert_eq!(legacy.antecedent, vec![1, 2]);
        assert_eq!(legacy.consequent, vec![3]);
        assert!(parse_rule("1 2, 3 (1) : 3", 2, 1).is_err());
        assert!(parse_rule("1 2, 3 : 1", 2, 1).is_err());
        assert!(parse_rule("1 x, 3 (1) : 1", 2, 1).is_err());
        assert!(parse_rule("1, 3 (1) : 1", 2, 1).is_err());
    }

    #[test]
    fn counts_accept_matlab_float_spelling() {
        assert_eq!(parse_count("3"), Some(3));
        assert_eq!(parse_count("3.0"), Some(3));
        assert_eq!(parse_count("-1"), None);
        assert_eq!(parse_count("2.5"), None);
    }
}
