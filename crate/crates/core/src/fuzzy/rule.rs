use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
}

/// One row of the rulebase in matrix encoding.
///
/// Antecedent entries are 1-based term indices per input: `0` means the input
/// is ignored and `-n` selects the complement of term `n`. Consequent entries
/// use the same encoding per output, where `0` leaves that output untouched.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub antecedent: Vec<i32>,
    pub consequent: Vec<i32>,
    pub weight: f64,
    pub connective: Connective,
}

impl Rule {
    pub fn new(antecedent: Vec<i32>, consequent: Vec<i32>, weight: f64, connective: Connective) -> Self {
        Self { antecedent, consequent, weight, connective }
    }

    pub fn and(antecedent: Vec<i32>, consequent: Vec<i32>) -> Self {
        Self::new(antecedent, consequent, 1.0, Connective::And)
    }

    pub fn or(antecedent: Vec<i32>, consequent: Vec<i32>) -> Self {
        Self::new(antecedent, consequent, 1.0, Connective::Or)
    }
}
