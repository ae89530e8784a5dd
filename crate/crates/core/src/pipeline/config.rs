use crate::detectors::{PcaModel, DEFAULT_WINDOW};
use crate::fuzzy::{default_rulebase, FuzzySystem};

use super::PipelineError;

/// PCA/SPE detection over a group of sensors that observe the same quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeFusion {
    pub model: PcaModel,
    /// Sensor ids in model column order.
    pub sensors: Vec<String>,
}

/// Optional detectors; a detector runs when its threshold is set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DetectorConfig {
    pub variance_threshold: Option<f64>,
    pub uncertainty_threshold: Option<f64>,
    pub spe: Option<SpeFusion>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Three inputs (value, |ROC|, std_dev); output 0 is the confidence.
    pub fis: FuzzySystem,
    /// Samples scoring below this are reconstructed.
    pub accept_threshold: f64,
    /// Samples scoring below this count towards a fault episode.
    pub fault_threshold: f64,
    pub report_after: usize,
    pub reconstruction_alpha: f64,
    pub warmup: usize,
    pub window: usize,
    pub detectors: DetectorConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            fis: default_rulebase(),
            accept_threshold: 0.5,
            fault_threshold: 0.3,
            report_after: 10,
            reconstruction_alpha: 0.3,
            warmup: 5,
            window: DEFAULT_WINDOW,
            detectors: DetectorConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |msg: String| Err(PipelineError::Config(msg));
        let unit_open = |x: f64| x > 0.0 && x < 1.0;
        if !unit_open(self.accept_threshold) {
            return bad(format!("accept_threshold {} must lie in (0, 1)", self.accept_threshold));
        }
        if !unit_open(self.fault_threshold) {
            return bad(format!("fault_threshold {} must lie in (0, 1)", self.fault_threshold));
        }
        if self.fault_threshold > self.accept_threshold {
            return bad(format!(
                "fault_threshold {} exceeds accept_threshold {}",
                self.fault_threshold, self.accept_threshold
            ));
        }
        if self.report_after == 0 {
            return bad("report_after must be positive".into());
        }
        if !(self.reconstruction_alpha > 0.0 && self.reconstruction_alpha <= 1.0) {
            return bad(format!("reconstruction_alpha {} must lie in (0, 1]", self.reconstruction_alpha));
        }
        if self.window < 2 {
            return bad(format!("window {} must be at least 2", self.window));
        }
        if self.fis.inputs.len() != 3 || self.fis.outputs.is_empty() {
            return bad(format!(
                "rulebase must have 3 inputs (value, rate of change, std dev) and an output; has {} and {}",
                self.fis.inputs.len(),
                self.fis.outputs.len()
            ));
        }
        for (name, t) in [
            ("variance_threshold", self.detectors.variance_threshold),
            ("uncertainty_threshold", self.detectors.uncertainty_threshold),
        ] {
            if let Some(t) = t {
                if !(t >= 0.0 && t.is_finite()) {
                    return bad(format!("{name} {t} must be a nonnegative number"));
                }
            }
        }
        if let Some(spe) = &self.detectors.spe {
            if spe.sensors.len() != spe.model.sensors() {
                return bad(format!(
                    "spe fusion lists {} sensors but the model has {}",
                    spe.sensors.len(),
                    spe.model.sensors()
                ));
            }
        }
        Ok(())
    }
}
