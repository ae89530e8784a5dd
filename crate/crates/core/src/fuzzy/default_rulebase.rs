use super::{Domain, FuzzySystem, LinguisticVariable, MembershipFunction, Rule, Term};

/// Ultrasonic distance range in cm.
pub const DISTANCE_RANGE: Domain = Domain { lo: 0.0, hi: 400.0 };
/// Absolute rate of change, cm/s.
pub const ROC_RANGE: Domain = Domain { lo: 0.0, hi: 6.0 };
/// Windowed standard deviation, cm.
pub const STD_RANGE: Domain = Domain { lo: 0.0, hi: 6.0 };
pub const CONFIDENCE_RANGE: Domain = Domain { lo: 0.0, hi: 1.0 };

fn three_terms(name: &str, range: Domain, labels: [&str; 3], sigma: f64) -> LinguisticVariable {
    let centers = [range.lo, range.midpoint(), range.hi];
    let terms = labels
        .iter()
        .zip(centers)
        .map(|(label, c)| Term::new(*label, MembershipFunction::gaussian(sigma, c)))
        .collect();
    LinguisticVariable::new(name, range, terms)
}

/// The shipped confidence rulebase over `(distance, |ROC|, std_dev)`.
///
/// Term indices: distance Near/Mid/Far, ROC and std Low/Medium/High,
/// confidence Low/Medium/High. At mid-range distance the output depends
/// only on the worse of ROC and std, so the surface is non-increasing in
/// both.
pub fn default_rulebase() -> FuzzySystem {
    let inputs = vec![
        three_terms("distance", DISTANCE_RANGE, ["Near", "Mid", "Far"], 70.0),
        three_terms("Rate_of_Change", ROC_RANGE, ["Low", "Medium", "High"], 0.6),
        three_terms("Standard_Deviation", STD_RANGE, ["Low", "Medium", "High"], 0.6),
    ];
    let outputs = vec![three_terms("confidence", CONFIDENCE_RANGE, ["Low", "Medium", "High"], 0.25)];
    let rules = vec![
        // steady reading
        Rule::and(vec![2, 1, 1], vec![3]),
        // steady but near either end of the sensor range
        Rule::and(vec![1, 1, 1], vec![2]),
        Rule::and(vec![3, 1, 1], vec![2]),
        // worst evidence is Medium
        Rule::and(vec![0, 2, 1], vec![2]),
        Rule::and(vec![0, 1, 2], vec![2]),
        Rule::and(vec![0, 2, 2], vec![2]),
        Rule::or(vec![0, 3, 3], vec![1]),
        // Medium evidence off mid-range drops a further level
        Rule::and(vec![-2, 2, 0], vec![1]),
        Rule::and(vec![-2, 0, 2], vec![1]),
    ];
    FuzzySystem::mamdani("sensor_confidence", inputs, outputs, rules)
}
