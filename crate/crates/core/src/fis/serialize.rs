use std::fmt::Write;

use super::number::{format_list, format_number};
use super::parse::SourceMap;
use crate::fuzzy::{
    Aggregation, AndMethod, Connective, Defuzzification, FuzzySystem, Implication, LinguisticVariable, Location,
    MembershipFunction, OrMethod, DEFAULT_RESOLUTION,
};

/// Canonical `.fis` text: fixed section and key order, LF endings,
/// numbers in shortest form with at most 6 significant digits.
pub fn serialize_fis(sys: &FuzzySystem) -> String {
    serialize_with_map(sys).0
}

struct Out {
    text: String,
    line: usize,
    map: SourceMap,
}

impl Out {
    fn keyed(&mut self, loc: Location, s: impl AsRef<str>) -> usize {
        let n = self.push(s);
        self.map.insert(loc, n);
        n
    }

    fn push(&mut self, s: impl AsRef<str>) -> usize {
        self.line += 1;
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self.line
    }
}

pub(crate) fn serialize_with_map(sys: &FuzzySystem) -> (String, SourceMap) {
    let mut o = Out { text: String::new(), line: 0, map: SourceMap::new() };
    let header = o.push("[System]");
    o.map.insert(Location::System, header);
    o.keyed(Location::SystemKey("Name"), format!("Name='{}'", sys.name));
    o.push("Type='mamdani'");
    o.push("Version=2.0");
    o.keyed(Location::SystemKey("NumInputs"), format!("NumInputs={}", sys.inputs.len()));
    o.keyed(Location::SystemKey("NumOutputs"), format!("NumOutputs={}", sys.outputs.len()));
    o.keyed(Location::SystemKey("NumRules"), format!("NumRules={}", sys.rules.len()));
    o.push(format!("AndMethod='{}'", and_name(sys.and_method)));
    o.push(format!("OrMethod='{}'", or_name(sys.or_method)));
    o.push(format!("ImpMethod='{}'", imp_name(sys.implication)));
    o.push(format!("AggMethod='{}'", agg_name(sys.aggregation)));
    o.keyed(Location::SystemKey("DefuzzMethod"), format!("DefuzzMethod='{}'", defuzz_name(sys.defuzzification)));
    if sys.resolution != DEFAULT_RESOLUTION {
        o.keyed(Location::SystemKey("Resolution"), format!("Resolution={}", sys.resolution));
    }

    for (i, var) in sys.inputs.iter().enumerate() {
        variable(&mut o, "Input", i, var, Location::Input(i), |k| Location::InputKey(i, k), |t| Location::InputTerm(i, t));
    }
    for (i, var) in sys.outputs.iter().enumerate() {
        variable(&mut o, "Output", i, var, Location::Output(i), |k| Location::OutputKey(i, k), |t| Location::OutputTerm(i, t));
    }

    o.push("");
    o.push("[Rules]");
    for (r, rule) in sys.rules.iter().enumerate() {
        let mut line = String::new();
        let ante: Vec<String> = rule.antecedent.iter().map(i32::to_string).collect();
        let cons: Vec<String> = rule.consequent.iter().map(i32::to_string).collect();
        let conn = match rule.connective {
            Connective::And => 1,
            Connective::Or => 2,
        };
        let _ = write!(line, "{}, {} ({}) : {conn}", ante.join(" "), cons.join(" "), format_number(rule.weight));
        let n = o.push(line);
        o.map.insert(Location::Rule(r), n);
    }
    (o.text, o.map)
}

fn variable(
    o: &mut Out,
    kind: &str,
    i: usize,
    var: &LinguisticVariable,
    loc: Location,
    key_loc: impl Fn(&'static str) -> Location,
    term_loc: impl Fn(usize) -> Location,
) {
    o.push("");
    let header = o.push(format!("[{kind}{}]", i + 1));
    o.map.insert(loc, header);
    o.keyed(key_loc("Name"), format!("Name='{}'", var.name));
    o.keyed(key_loc("Range"), format!("Range={}", format_list(&[var.range.lo, var.range.hi])));
    o.keyed(key_loc("NumMFs"), format!("NumMFs={}", var.terms.len()));
    for (t, term) in var.terms.iter().enumerate() {
        let n = o.push(format!(
            "MF{}='{}':'{}',{}",
            t + 1,
            term.name,
            mf_type(&term.mf),
            format_list(&term.mf.params())
        ));
        o.map.insert(term_loc(t), n);
    }
}

pub(crate) fn mf_type(mf: &MembershipFunction) -> &'static str {
    match mf {
        MembershipFunction::Gaussian { .. } => "gaussmf",
        MembershipFunction::Triangular { .. } => "trimf",
        MembershipFunction::Trapezoidal { .. } => "trapmf",
    }
}

fn and_name(m: AndMethod) -> &'static str {
    match m {
        AndMethod::Min => "min",
        AndMethod::Prod => "prod",
    }
}

fn or_name(m: OrMethod) -> &'static str {
    match m {
        OrMethod::Max => "max",
        OrMethod::Probor => "probor",
    }
}

fn imp_name(m: Implication) -> &'static str {
    match m {
        Implication::Min => "min",
        Implication::Prod => "prod",
    }
}

fn agg_name(m: Aggregation) -> &'static str {
    match m {
        Aggregation::Max => "max",
        Aggregation::Sum => "sum",
    }
}

fn defuzz_name(m: Defuzzification) -> &'static str {
    match m {
        Defuzzification::Centroid => "centroid",
        Defuzzification::Bisector => "bisector",
        Defuzzification::Mom => "mom",
        Defuzzification::Lom => "lom",
        Defuzzification::Som => "som",
    }
}
