//! Seeded random Mamdani systems for fuzzing, oracle checks and benches.

use super::SplitMix64;
use crate::fuzzy::{
    Aggregation, AndMethod, Connective, Domain, FuzzySystem, Implication, LinguisticVariable, MembershipFunction,
    OrMethod, Rule, Term,
};

/// Rounds to two decimals so the value survives a `.fis` round trip.
fn snap(x: f64) -> f64 {
    format!("{x:.2}").parse().expect("formatted float")
}

fn below(rng: &mut SplitMix64, n: usize) -> usize {
    (rng.next_f64() * n as f64) as usize % n
}

fn uniform(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.next_f64()
}

fn random_mf(rng: &mut SplitMix64, r: Domain) -> MembershipFunction {
    let w = r.width();
    match below(rng, 3) {
        0 => MembershipFunction::gaussian(snap(uniform(rng, 0.08, 0.4) * w), snap(uniform(rng, r.lo, r.hi))),
        1 => {
            let b = uniform(rng, r.lo, r.hi);
            let a = snap(b - uniform(rng, 0.1, 0.6) * w);
            let c = snap(b + uniform(rng, 0.1, 0.6) * w);
            MembershipFunction::triangular(a, snap(b), c)
        }
        _ => {
            let b = uniform(rng, r.lo - 0.1 * w, r.hi - 0.2 * w);
            let c = b + uniform(rng, 0.05, 0.3) * w;
            let a = snap(b - uniform(rng, 0.1, 0.4) * w);
            let d = snap(c + uniform(rng, 0.1, 0.4) * w);
            MembershipFunction::trapezoidal(a, snap(b), snap(c), d)
        }
    }
}

fn random_var(rng: &mut SplitMix64, name: String) -> LinguisticVariable {
    let lo = below(rng, 201) as f64 - 100.0;
    let hi = lo + 1.0 + below(rng, 200) as f64;
    let range = Domain::new(lo, hi);
    let n = 2 + below(rng, 3);
    let terms = (0..n).map(|t| Term::new(format!("t{}", t + 1), random_mf(rng, range))).collect();
    LinguisticVariable::new(name, range, terms)
}

/// A valid system with 1-4 inputs, 1-2 outputs, 2-4 terms per variable,
/// mixed membership shapes and operators. Parameters carry at most two
/// decimals.
pub fn random_system(seed: u64) -> FuzzySystem {
    let mut rng = SplitMix64::new(seed);
    let n_in = 1 + below(&mut rng, 4);
    let n_out = 1 + below(&mut rng, 2);
    let inputs: Vec<_> = (0..n_in).map(|i| random_var(&mut rng, format!("in{}", i + 1))).collect();
    let outputs: Vec<_> = (0..n_out).map(|i| random_var(&mut rng, format!("out{}", i + 1))).collect();
    let n_rules = 1 + below(&mut rng, 6);
    let rules = (0..n_rules)
        .map(|_| {
            let mut antecedent: Vec<i32> = inputs
                .iter()
                .map(|v| {
                    let n = v.terms.len();
                    match below(&mut rng, 10) {
                        0..=2 => 0,
                        3 => -(1 + below(&mut rng, n) as i32),
                        _ => 1 + below(&mut rng, n) as i32,
                    }
                })
                .collect();
            if antecedent.iter().all(|&a| a == 0) {
                antecedent[0] = 1;
            }
            let consequent = outputs.iter().map(|v| 1 + below(&mut rng, v.terms.len()) as i32).collect();
            let weight = [1.0, 1.0, 0.5, 0.75, 0.25][below(&mut rng, 5)];
            let connective = if below(&mut rng, 3) == 0 { Connective::Or } else { Connective::And };
            Rule::new(antecedent, consequent, weight, connective)
        })
        .collect();
    let mut sys = FuzzySystem::mamdani(format!("random_{seed}"), inputs, outputs, rules);
    sys.and_method = if below(&mut rng, 2) == 0 { AndMethod::Min } else { AndMethod::Prod };
    sys.or_method = if below(&mut rng, 2) == 0 { OrMethod::Max } else { OrMethod::Probor };
    sys.implication = if below(&mut rng, 2) == 0 { Implication::Min } else { Implication::Prod };
    sys.aggregation = if below(&mut rng, 3) == 0 { Aggregation::Sum } else { Aggregation::Max };
    sys
}
