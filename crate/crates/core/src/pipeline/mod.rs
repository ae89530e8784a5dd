//! The validation loop: score, pass or reconstruct, track prolonged faults.

mod config;
mod outcome;
mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::detectors::{spe_verdict, uncertainty_verdict, variance_verdict, Window};
use crate::features::{extract_with_reference, Sample};
use crate::fuzzy::{Engine, FuzzyError, Scratch};

pub use config::{DetectorConfig, PipelineConfig, SpeFusion};
pub use outcome::{Flag, Flags, ValidationOutcome};
pub use report::{FaultReport, FaultTracker, SegmentSummary};

/// Confidences this close below `accept_threshold` still accept. A centroid
/// of a symmetric output set lands on the midpoint only up to rounding.
pub const ACCEPT_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid pipeline config: {0}")]
    Config(String),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

/// Result of one [`SensorPipeline::step`].
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput {
    pub outcome: ValidationOutcome,
    /// Set when this sample closed a reportable fault episode.
    pub report: Option<FaultReport>,
}

/// Validation state for a single sensor stream. Single writer.
pub struct SensorPipeline {
    engine: Arc<Engine>,
    config: Arc<PipelineConfig>,
    sensor_id: String,
    window: Window,
    prev: Option<Sample>,
    reference: Option<f64>,
    estimate: Option<f64>,
    seen: usize,
    tracker: FaultTracker,
    scratch: Scratch,
}

impl SensorPipeline {
    pub fn new(config: PipelineConfig, sensor_id: impl Into<String>) -> Result<Self, PipelineError> {
        config.validate()?;
        let engine = Arc::new(Engine::new(config.fis.clone())?);
        Ok(Self::with_engine(engine, Arc::new(config), sensor_id))
    }

    /// Shares a compiled engine; `config` must already be validated.
    pub fn with_engine(engine: Arc<Engine>, config: Arc<PipelineConfig>, sensor_id: impl Into<String>) -> Self {
        let sensor_id = sensor_id.into();
        Self {
            window: Window::new(config.window),
            tracker: FaultTracker::new(sensor_id.clone(), config.fault_threshold, config.report_after),
            engine,
            config,
            sensor_id,
            prev: None,
            reference: None,
            estimate: None,
            seen: 0,
            scratch: Scratch::default(),
        }
    }

    pub fn sensor_id(&self) -> &str {
        &self.sensor_id
    }

    /// Current smoothed last-good estimate.
    pub fn estimate(&self) -> Option<f64> {
        self.estimate
    }

    pub fn step(&mut self, sample: &Sample) -> StepOutput {
        self.step_with(sample, None)
    }

    /// `spe_tripped` carries the fusion-level SPE verdict for this sample, if any.
    pub fn step_with(&mut self, sample: &Sample, spe_tripped: Option<bool>) -> StepOutput {
        let raw = sample.value;
        let regressed = self.prev.as_ref().is_some_and(|p| sample.timestamp < p.timestamp);
        if regressed || !raw.is_finite() || !sample.timestamp.is_finite() {
            return self.reject(sample, regressed);
        }

        let cfg = &*self.config;
        let mut flags = Flags::empty();
        flags.set(Flag::SpeTrip, spe_tripped == Some(true));
        let warmup = self.seen < cfg.warmup;
        flags.set(Flag::Warmup, warmup);
        self.seen += 1;

        self.window.push(raw);
        let inputs = extract_with_reference(&self.window, self.prev.as_ref(), self.reference, sample);
        let confidence = match self.engine.infer_with(&inputs.to_array(), &mut self.scratch) {
            Ok(inf) => {
                flags.set(Flag::OutOfRange, inf.out_of_range);
                if inf.fired[0] {
                    let range = self.engine.system().outputs[0].range;
                    ((inf.outputs[0] - range.lo) / range.width()).clamp(0.0, 1.0)
                } else {
                    flags.insert(Flag::NoRuleFired);
                    0.0
                }
            }
            Err(_) => {
                flags.insert(Flag::NoRuleFired);
                0.0
            }
        };

        if let Some(t) = cfg.detectors.variance_threshold {
            if let Ok(v) = variance_verdict(&self.window, t) {
                flags.set(Flag::VarianceTrip, v.tripped);
            }
        }
        if let Some(t) = cfg.detectors.uncertainty_threshold {
            if let Ok(v) = uncertainty_verdict(&self.window, t) {
                flags.set(Flag::UncertaintyTrip, v.tripped);
            }
        }

        let estimate = *self.estimate.get_or_insert(raw);
        let confident = confidence >= cfg.accept_threshold - ACCEPT_SLACK;
        let (accepted, reconstructed) = if confident {
            let alpha = cfg.reconstruction_alpha;
            self.estimate = Some(alpha * raw + (1.0 - alpha) * estimate);
            (raw, false)
        } else if warmup {
            (raw, false)
        } else {
            (estimate, true)
        };

        self.prev = Some(sample.clone());
        self.reference = Some(accepted);
        let report = self.tracker.observe(sample.timestamp, raw, confidence, flags, warmup.then_some(false));
        StepOutput {
            outcome: ValidationOutcome {
                timestamp: sample.timestamp,
                sensor_id: self.sensor_id.clone(),
                raw,
                confidence,
                accepted,
                reconstructed,
                flags,
            },
            report,
        }
    }

    fn reject(&mut self, sample: &Sample, regressed: bool) -> StepOutput {
        let mut flags = Flags::empty();
        flags.insert(if regressed { Flag::NonMonotonicTime } else { Flag::OutOfRange });
        let (accepted, reconstructed) = match self.estimate {
            Some(e) => (e, true),
            None => (sample.value, false),
        };
        let report = self.tracker.observe(sample.timestamp, sample.value, 0.0, flags, Some(true));
        StepOutput {
            outcome: ValidationOutcome {
                timestamp: sample.timestamp,
                sensor_id: self.sensor_id.clone(),
                raw: sample.value,
                confidence: 0.0,
                accepted,
                reconstructed,
                flags,
            },
            report,
        }
    }

    /// Flushes an in-progress fault episode at end of stream.
    pub fn finalize(&mut self) -> Option<FaultReport> {
        self.tracker.close()
    }
}

/// Routes a mixed stream to per-sensor pipelines and evaluates the SPE
/// fusion on the latest reading of each fused sensor.
pub struct Validator {
    engine: Arc<Engine>,
    config: Arc<PipelineConfig>,
    sensors: BTreeMap<String, SensorPipeline>,
    fused: Vec<Option<f64>>,
}

impl Validator {
    pub fn new(config: PipelineConfig) -> Result<Self, PipelineError> {
        config.validate()?;
        let engine = Arc::new(Engine::new(config.fis.clone())?);
        let fused = config.detectors.spe.as_ref().map_or(0, |s| s.sensors.len());
        Ok(Self { engine, config: Arc::new(config), sensors: BTreeMap::new(), fused: vec![None; fused] })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn process(&mut self, sample: &Sample) -> StepOutput {
        let spe = self.fusion_verdict(sample);
        let pipeline = match self.sensors.get_mut(&sample.sensor_id) {
            Some(p) => p,
            None => {
                let p = SensorPipeline::with_engine(self.engine.clone(), self.config.clone(), sample.sensor_id.clone());
                self.sensors.entry(sample.sensor_id.clone()).or_insert(p)
            }
        };
        pipeline.step_with(sample, spe)
    }

    fn fusion_verdict(&mut self, sample: &Sample) -> Option<bool> {
        let fusion = self.config.detectors.spe.as_ref()?;
        let idx = fusion.sensors.iter().position(|s| *s == sample.sensor_id)?;
        if !sample.value.is_finite() {
            return None;
        }
        self.fused[idx] = Some(sample.value);
        let x: Option<Vec<f64>> = self.fused.iter().copied().collect();
        spe_verdict(&fusion.model, &x?).ok().map(|v| v.tripped)
    }

    /// Flushes open episodes, in sensor id order.
    pub fn finish(&mut self) -> Vec<FaultReport> {
        self.sensors.values_mut().filter_map(SensorPipeline::finalize).collect()
    }
}
