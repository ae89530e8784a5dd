use super::{firing_strength, Domain, FuzzyError, FuzzySystem};

/// Aggregated output membership sampled on a uniform grid over `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedOutput {
    pub domain: Domain,
    pub samples: Vec<f64>,
}

/// Center of gravity of the aggregated set.
///
/// The grid samples are integrated with the trapezoidal rule, so the result
/// converges to the continuous centroid as the resolution grows.
pub fn defuzzify_centroid(agg: &AggregatedOutput) -> Result<f64, FuzzyError> {
    let n = agg.samples.len();
    if n < 2 {
        return Err(FuzzyError::ZeroArea);
    }
    let ys: Vec<f64> = agg.domain.grid(n).collect();
    centroid(&ys, &agg.samples, agg.domain).ok_or(FuzzyError::ZeroArea)
}

#[inline]
fn centroid(ys: &[f64], mu: &[f64], domain: Domain) -> Option<f64> {
    let last = mu.len() - 1;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, (&y, &m)) in ys.iter().zip(mu).enumerate() {
        let w = if i == 0 || i == last { 0.5 * m } else { m };
        num += w * y;
        den += w;
    }
    (den > 0.0).then(|| domain.clamp(num / den))
}

/// Result of one inference pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Inference {
    /// One crisp value per output variable.
    pub outputs: Vec<f64>,
    /// `fired[k]` is false when no rule produced any area on output `k`; the
    /// corresponding value is then the midpoint of that output's range.
    pub fired: Vec<bool>,
    /// At least one input was outside its declared range and got clamped.
    pub out_of_range: bool,
}

impl Inference {
    pub fn no_rule_fired(&self) -> bool {
        self.fired.iter().any(|f| !f)
    }
}

struct OutputGrid {
    domain: Domain,
    ys: Vec<f64>,
    /// `terms[t][i]` is the degree of term `t` at `ys[i]`.
    terms: Vec<Vec<f64>>,
}

/// Reusable buffers for [`Engine::infer_with`].
#[derive(Debug, Default, Clone)]
pub struct Scratch {
    fuzzified: Vec<Vec<f64>>,
    strengths: Vec<f64>,
    agg: Vec<f64>,
}

/// A validated system with its output membership grids precomputed.
///
/// Immutable after construction and safe to share across threads.
pub struct Engine {
    system: FuzzySystem,
    grids: Vec<OutputGrid>,
}

impl Engine {
    pub fn new(system: FuzzySystem) -> Result<Self, FuzzyError> {
        let violations = system.violations();
        if !violations.is_empty() {
            return Err(FuzzyError::InvalidSystem(violations));
        }
        let n = system.resolution;
        let grids = system
            .outputs
            .iter()
            .map(|var| {
                let ys: Vec<f64> = var.range.grid(n).collect();
                let terms = var
                    .terms
                    .iter()
                    .map(|t| ys.iter().map(|&y| t.mf.degree(y)).collect())
                    .collect();
                OutputGrid { domain: var.range, ys, terms }
            })
            .collect();
        Ok(Self { system, grids })
    }

    pub fn system(&self) -> &FuzzySystem {
        &self.system
    }

    pub fn input_count(&self) -> usize {
        self.system.inputs.len()
    }

    pub fn infer(&self, inputs: &[f64]) -> Result<Inference, FuzzyError> {
        self.infer_with(inputs, &mut Scratch::default())
    }

    pub fn infer_with(&self, inputs: &[f64], scratch: &mut Scratch) -> Result<Inference, FuzzyError> {
        let sys = &self.system;
        if inputs.len() != sys.inputs.len() {
            return Err(FuzzyError::InputCount { expected: sys.inputs.len(), got: inputs.len() });
        }
        if let Some(i) = inputs.iter().position(|x| !x.is_finite()) {
            return Err(FuzzyError::NonFiniteInput(i));
        }

        let mut out_of_range = false;
        scratch.fuzzified.resize_with(inputs.len(), Vec::new);
        for ((var, &x), buf) in sys.inputs.iter().zip(inputs).zip(scratch.fuzzified.iter_mut()) {
            if !var.range.contains(x) {
                out_of_range = true;
            }
            var.fuzzify_into(var.range.clamp(x), buf);
        }

        scratch.strengths.clear();
        scratch.strengths.extend(
            sys.rules
                .iter()
                .map(|r| firing_strength(r, &scratch.fuzzified, sys.and_method, sys.or_method)),
        );

        let mut outputs = Vec::with_capacity(self.grids.len());
        let mut fired = Vec::with_capacity(self.grids.len());
        for (k, grid) in self.grids.iter().enumerate() {
            scratch.agg.clear();
            scratch.agg.resize(grid.ys.len(), 0.0);
            let mut any = false;
            for (rule, &s) in sys.rules.iter().zip(&scratch.strengths) {
                let idx = rule.consequent[k];
                if idx == 0 || s <= 0.0 {
                    continue;
                }
                any = true;
                let term = &grid.terms[idx.unsigned_abs() as usize - 1];
                for (acc, &mu) in scratch.agg.iter_mut().zip(term) {
                    let mu = if idx < 0 { 1.0 - mu } else { mu };
                    *acc = sys.aggregation.combine(*acc, sys.implication.apply(s, mu));
                }
            }
            let value = if any { centroid(&grid.ys, &scratch.agg, grid.domain) } else { None };
            fired.push(value.is_some());
            outputs.push(value.unwrap_or_else(|| grid.domain.midpoint()));
        }
        Ok(Inference { outputs, fired, out_of_range })
    }

    /// The aggregated membership for output `k`, before defuzzification.
    pub fn aggregate(&self, inputs: &[f64], k: usize) -> Result<AggregatedOutput, FuzzyError> {
        let sys = &self.system;
        if inputs.len() != sys.inputs.len() {
            return Err(FuzzyError::InputCount { expected: sys.inputs.len(), got: inputs.len() });
        }
        let grid = self.grids.get(k).ok_or(FuzzyError::OutputIndex(k))?;
        let fuzzified: Vec<Vec<f64>> = sys
            .inputs
            .iter()
            .zip(inputs)
            .map(|(v, &x)| v.fuzzify(v.range.clamp(x)))
            .collect();
        let mut samples = vec![0.0; grid.ys.len()];
        for rule in &sys.rules {
            let idx = rule.consequent[k];
            let s = firing_strength(rule, &fuzzified, sys.and_method, sys.or_method);
            if idx == 0 || s <= 0.0 {
                continue;
            }
            let term = &grid.terms[idx.unsigned_abs() as usize - 1];
            for (acc, &mu) in samples.iter_mut().zip(term) {
                let mu = if idx < 0 { 1.0 - mu } else { mu };
                *acc = sys.aggregation.combine(*acc, sys.implication.apply(s, mu));
            }
        }
        Ok(AggregatedOutput { domain: grid.domain, samples })
    }
}

/// One-shot inference; builds an [`Engine`] per call.
pub fn infer(sys: &FuzzySystem, inputs: &[f64]) -> Result<Inference, FuzzyError> {
    Engine::new(sys.clone())?.infer(inputs)
}
