use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LinguisticVariable, Rule};

pub const DEFAULT_RESOLUTION: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AndMethod {
    #[default]
    Min,
    Prod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrMethod {
    #[default]
    Max,
    Probor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Implication {
    #[default]
    Min,
    Prod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    #[default]
    Max,
    /// Pointwise sum, saturated at 1.
    Sum,
}

/// Only `Centroid` is executable; the others exist so `.fis` files naming
/// them can be read and then rejected with a precise diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Defuzzification {
    #[default]
    Centroid,
    Bisector,
    Mom,
    Lom,
    Som,
}

impl AndMethod {
    #[inline]
    pub fn combine(self, a: f64, b: f64) -> f64 {
        match self {
            Self::Min => a.min(b),
            Self::Prod => a * b,
        }
    }
}

impl OrMethod {
    #[inline]
    pub fn combine(self, a: f64, b: f64) -> f64 {
        match self {
            Self::Max => a.max(b),
            Self::Probor => a + b - a * b,
        }
    }
}

impl Implication {
    #[inline]
    pub fn apply(self, strength: f64, degree: f64) -> f64 {
        match self {
            Self::Min => strength.min(degree),
            Self::Prod => strength * degree,
        }
    }
}

impl Aggregation {
    #[inline]
    pub fn combine(self, acc: f64, value: f64) -> f64 {
        match self {
            Self::Max => acc.max(value),
            Self::Sum => (acc + value).min(1.0),
        }
    }
}

/// A complete Mamdani system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzySystem {
    pub name: String,
    pub inputs: Vec<LinguisticVariable>,
    pub outputs: Vec<LinguisticVariable>,
    pub rules: Vec<Rule>,
    pub and_method: AndMethod,
    pub or_method: OrMethod,
    pub implication: Implication,
    pub aggregation: Aggregation,
    pub defuzzification: Defuzzification,
    /// Number of output-domain samples used for aggregation.
    pub resolution: usize,
}

/// Where in a system a constraint is broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    System,
    /// A named key of the system header.
    SystemKey(&'static str),
    Input(usize),
    InputKey(usize, &'static str),
    Output(usize),
    OutputKey(usize, &'static str),
    InputTerm(usize, usize),
    OutputTerm(usize, usize),
    Rule(usize),
}

impl Location {
    /// The enclosing location, for lookups that lack a key-level entry.
    pub fn parent(self) -> Option<Location> {
        match self {
            Location::System => None,
            Location::SystemKey(_) | Location::Input(_) | Location::Output(_) | Location::Rule(_) => Some(Location::System),
            Location::InputKey(i, _) | Location::InputTerm(i, _) => Some(Location::Input(i)),
            Location::OutputKey(i, _) | Location::OutputTerm(i, _) => Some(Location::Output(i)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub location: Location,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Location::System => write!(f, "system: {}", self.message),
            Location::SystemKey(k) => write!(f, "system {k}: {}", self.message),
            Location::Input(i) => write!(f, "input {}: {}", i + 1, self.message),
            Location::InputKey(i, k) => write!(f, "input {} {k}: {}", i + 1, self.message),
            Location::Output(i) => write!(f, "output {}: {}", i + 1, self.message),
            Location::OutputKey(i, k) => write!(f, "output {} {k}: {}", i + 1, self.message),
            Location::InputTerm(i, t) => write!(f, "input {} term {}: {}", i + 1, t + 1, self.message),
            Location::OutputTerm(i, t) => write!(f, "output {} term {}: {}", i + 1, t + 1, self.message),
            Location::Rule(r) => write!(f, "rule {}: {}", r + 1, self.message),
        }
    }
}

impl FuzzySystem {
    /// A system with classic Mamdani operators and default resolution.
    pub fn mamdani(
        name: impl Into<String>,
        inputs: Vec<LinguisticVariable>,
        outputs: Vec<LinguisticVariable>,
        rules: Vec<Rule>,
    ) -> Self {
        Self {
            name: name.into(),
            inputs,
            outputs,
            rules,
            and_method: AndMethod::default(),
            or_method: OrMethod::default(),
            implication: Implication::default(),
            aggregation: Aggregation::default(),
            defuzzification: Defuzzification::default(),
            resolution: DEFAULT_RESOLUTION,
        }
    }

    /// Every broken invariant, one entry each. Empty means the system is runnable.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |location, message: String| out.push(Violation { location, message });

        if !is_identifier(&self.name) {
            push(Location::SystemKey("Name"), format!("system name '{}' is not a valid identifier", self.name));
        }
        if self.inputs.is_empty() {
            push(Location::SystemKey("NumInputs"), "system has no inputs".into());
        }
        if self.outputs.is_empty() {
            push(Location::SystemKey("NumOutputs"), "system has no outputs".into());
        }
        if self.rules.is_empty() {
            push(Location::SystemKey("NumRules"), "system has no rules".into());
        }
        if self.resolution < 2 {
            push(Location::SystemKey("Resolution"), format!("resolution must be >= 2, got {}", self.resolution));
        }
        if self.defuzzification != Defuzzification::Centroid {
            push(
                Location::SystemKey("DefuzzMethod"),
                format!("unsupported defuzzification method {:?}; only centroid is supported", self.defuzzification),
            );
        }

        let groups = [(&self.inputs, true), (&self.outputs, false)];
        for (vars, is_input) in groups {
            for (vi, var) in vars.iter().enumerate() {
                let key = |k| if is_input { Location::InputKey(vi, k) } else { Location::OutputKey(vi, k) };
                if !is_identifier(&var.name) {
                    push(key("Name"), format!("variable name '{}' is not a valid identifier", var.name));
                }
                let r = var.range;
                if !(r.lo.is_finite() && r.hi.is_finite()) || r.lo >= r.hi {
                    push(key("Range"), format!("range [{} {}] must be finite with lo < hi", r.lo, r.hi));
                }
                if var.terms.is_empty() {
                    push(key("NumMFs"), "variable has no terms".into());
                }
                let mut seen = HashSet::new();
                for (ti, term) in var.terms.iter().enumerate() {
                    let loc = if is_input { Location::InputTerm(vi, ti) } else { Location::OutputTerm(vi, ti) };
                    if !is_identifier(&term.name) {
                        push(loc, format!("term name '{}' is not a valid identifier", term.name));
                    }
                    if !seen.insert(term.name.as_str()) {
                        push(loc, format!("duplicate term name '{}'", term.name));
                    }
                    if let Err(msg) = term.mf.check() {
                        push(loc, msg);
                    }
                }
            }
        }

        for (ri, rule) in self.rules.iter().enumerate() {
            let loc = Location::Rule(ri);
            if rule.antecedent.len() != self.inputs.len() {
                push(
                    loc,
                    format!("antecedent has {} entries, system has {} inputs", rule.antecedent.len(), self.inputs.len()),
                );
            } else {
                for (vi, &idx) in rule.antecedent.iter().enumerate() {
                    let n = self.inputs[vi].terms.len();
                    if idx.unsigned_abs() as usize > n {
                        push(loc, format!("input {} term index {idx} out of range (1..={n})", vi + 1));
                    }
                }
                if rule.antecedent.iter().all(|&i| i == 0) {
                    push(loc, "antecedent consists only of don't-care entries".into());
                }
            }
            if rule.consequent.len() != self.outputs.len() {
                push(
                    loc,
                    format!("consequent has {} entries, system has {} outputs", rule.consequent.len(), self.outputs.len()),
                );
            } else {
                for (vi, &idx) in rule.consequent.iter().enumerate() {
                    let n = self.outputs[vi].terms.len();
                    if idx.unsigned_abs() as usize > n {
                        push(loc, format!("output {} term index {idx} out of range (1..={n})", vi + 1));
                    }
                }
            }
            if !(rule.weight > 0.0 && rule.weight <= 1.0) {
                push(loc, format!("weight {} must lie in (0, 1]", rule.weight));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Non-empty, single line, no quote characters.
fn is_identifier(name: &str) -> bool {
    !name.trim().is_empty() && name.trim() == name && !name.contains(['\'', '\n', '\r', ':'])
}

/// Degree to which `rule`'s antecedent holds, scaled by the rule weight.
///
/// `fuzzified[i][t]` is the degree of term `t` of input `i`.
pub fn firing_strength(
    rule: &Rule,
    fuzzified: &[Vec<f64>],
    and_method: AndMethod,
    or_method: OrMethod,
) -> f64 {
    let mut acc: Option<f64> = None;
    for (&idx, degrees) in rule.antecedent.iter().zip(fuzzified) {
        if idx == 0 {
            continue;
        }
        let d = degrees[idx.unsigned_abs() as usize - 1];
        let d = if idx < 0 { 1.0 - d } else { d };
        acc = Some(match (acc, rule.connective) {
            (None, _) => d,
            (Some(a), super::Connective::And) => and_method.combine(a, d),
            (Some(a), super::Connective::Or) => or_method.combine(a, d),
        });
    }
    acc.unwrap_or(0.0) * rule.weight
}
