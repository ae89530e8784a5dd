//! Direct, unoptimised Mamdani evaluation used as a reference. Shares no
//! code with the engine beyond the system description.

use sensorval::fuzzy::{Aggregation, AndMethod, Connective, Implication, MembershipFunction, OrMethod};
use sensorval::FuzzySystem;

pub fn degree(mf: &MembershipFunction, x: f64) -> f64 {
    match *mf {
        MembershipFunction::Gaussian { sigma, center } => (-((x - center) / sigma).powi(2) / 2.0).exp(),
        MembershipFunction::Triangular { a, b, c } => {
            let up = if b > a { (x - a) / (b - a) } else if x >= b { 1.0 } else { 0.0 };
            let down = if c > b { (c - x) / (c - b) } else if x <= b { 1.0 } else { 0.0 };
            up.min(down).clamp(0.0, 1.0)
        }
        MembershipFunction::Trapezoidal { a, b, c, d } => {
            let up = if b > a { (x - a) / (b - a) } else if x >= b { 1.0 } else { 0.0 };
            let down = if d > c { (d - x) / (d - c) } else if x <= c { 1.0 } else { 0.0 };
            up.min(1.0).min(down).clamp(0.0, 1.0)
        }
    }
}

pub fn strengths(sys: &FuzzySystem, inputs: &[f64]) -> Vec<f64> {
    let xs: Vec<f64> = sys.inputs.iter().zip(inputs).map(|(v, &x)| x.clamp(v.range.lo, v.range.hi)).collect();
    sys.rules
        .iter()
        .map(|rule| {
            let mut terms = Vec::new();
            for (i, &idx) in rule.antecedent.iter().enumerate() {
                if idx != 0 {
                    let mu = degree(&sys.inputs[i].terms[idx.unsigned_abs() as usize - 1].mf, xs[i]);
                    terms.push(if idx < 0 { 1.0 - mu } else { mu });
                }
            }
            let first = terms[0];
            let combined = terms[1..].iter().fold(first, |acc, &t| match rule.connective {
                Connective::And => match sys.and_method {
                    AndMethod::Min => acc.min(t),
                    AndMethod::Prod => acc * t,
                },
                Connective::Or => match sys.or_method {
                    OrMethod::Max => acc.max(t),
                    OrMethod::Probor => acc + t - acc * t,
                },
            });
            combined * rule.weight
        })
        .collect()
}

/// Aggregated membership of output `k` at `y`.
pub fn aggregated(sys: &FuzzySystem, w: &[f64], k: usize, y: f64) -> f64 {
    let mut acc = 0.0f64;
    for (rule, &s) in sys.rules.iter().zip(w) {
        let idx = rule.consequent[k];
        if idx == 0 || s <= 0.0 {
            continue;
        }
        let mu = degree(&sys.outputs[k].terms[idx.unsigned_abs() as usize - 1].mf, y);
        let mu = if idx < 0 { 1.0 - mu } else { mu };
        let v = match sys.implication {
            Implication::Min => s.min(mu),
            Implication::Prod => s * mu,
        };
        acc = match sys.aggregation {
            Aggregation::Max => acc.max(v),
            Aggregation::Sum => (acc + v).min(1.0),
        };
    }
    acc
}

/// Centroid of every output on a uniform grid of `points` samples, using
/// composite Simpson weights (`points` must be odd). `None` where nothing
/// fired.
pub fn centroids(sys: &FuzzySystem, inputs: &[f64], points: usize) -> Vec<Option<f64>> {
    assert!(points % 2 == 1 && points >= 3);
    let w = strengths(sys, inputs);
    (0..sys.outputs.len())
        .map(|k| {
            let r = sys.outputs[k].range;
            let h = (r.hi - r.lo) / (points - 1) as f64;
            let (mut num, mut den) = (0.0, 0.0);
            for i in 0..points {
                let y = r.lo + i as f64 * h;
                let simpson = if i == 0 || i == points - 1 { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                let mu = aggregated(sys, &w, k, y);
                num += simpson * y * mu;
                den += simpson * mu;
            }
            (den > 0.0).then(|| num / den)
        })
        .collect()
}
