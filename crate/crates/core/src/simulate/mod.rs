//! Seeded synthetic sensor streams with labelled fault injection.

mod prng;
pub mod suite;
mod systems;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::Sample;
pub use prng::SplitMix64;
pub use suite::{burst_after_60, fault_suite, SuiteCase};
pub use systems::random_system;

#[derive(Debug, Error, PartialEq)]
pub enum SimulateError {
    #[error("fault range {start}..{end} exceeds stream length {len}")]
    IndexOutOfRange { start: usize, end: usize, len: usize },
    #[error("invalid signal profile: {0}")]
    Profile(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalKind {
    /// `level`
    Constant,
    /// `level + slope * t`
    Ramp,
    /// `level + amplitude * sin(2 pi t / period)`
    Sine,
    /// Ultrasonic distance to a filling bin: falls linearly from `level` by
    /// `amplitude` over each `period`, then jumps back (the bin is emptied).
    FillCycle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalProfile {
    pub kind: SignalKind,
    pub level: f64,
    pub slope: f64,
    pub amplitude: f64,
    pub period: f64,
    pub noise_std: f64,
    /// Seconds between samples.
    pub sample_interval: f64,
    pub seed: u64,
    pub sensor_id: String,
}

impl Default for SignalProfile {
    fn default() -> Self {
        Self {
            kind: SignalKind::Constant,
            level: 200.0,
            slope: 0.0,
            amplitude: 0.0,
            period: 60.0,
            noise_std: 0.0,
            sample_interval: 1.0,
            seed: 0,
            sensor_id: "sensor".into(),
        }
    }
}

impl SignalProfile {
    pub fn validate(&self) -> Result<(), SimulateError> {
        let finite = [self.level, self.slope, self.amplitude, self.period, self.noise_std, self.sample_interval];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(SimulateError::Profile("parameters must be finite".into()));
        }
        if self.noise_std < 0.0 {
            return Err(SimulateError::Profile(format!("noise_std {} is negative", self.noise_std)));
        }
        if self.sample_interval <= 0.0 {
            return Err(SimulateError::Profile(format!("sample_interval {} must be positive", self.sample_interval)));
        }
        if matches!(self.kind, SignalKind::Sine | SignalKind::FillCycle) && self.period <= 0.0 {
            return Err(SimulateError::Profile(format!("period {} must be positive", self.period)));
        }
        Ok(())
    }

    /// Noise-free signal at time `t`.
    pub fn base(&self, t: f64) -> f64 {
        match self.kind {
            SignalKind::Constant => self.level,
            SignalKind::Ramp => self.level + self.slope * t,
            SignalKind::Sine => self.level + self.amplitude * (std::f64::consts::TAU * t / self.period).sin(),
            SignalKind::FillCycle => self.level - self.amplitude * (t / self.period).fract(),
        }
    }
}

/// `n` samples at `t = i * sample_interval` with additive white gaussian noise.
pub fn generate(profile: &SignalProfile, n: usize) -> Result<Vec<Sample>, SimulateError> {
    profile.validate()?;
    let mut rng = SplitMix64::new(profile.seed);
    Ok((0..n)
        .map(|i| {
            let t = i as f64 * profile.sample_interval;
            let mut v = profile.base(t);
            if profile.noise_std > 0.0 {
                v += profile.noise_std * rng.next_normal();
            }
            Sample::new(t, profile.sensor_id.clone(), v)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultKind {
    /// Extra zero-mean gaussian noise of std `magnitude`.
    NoiseBurst,
    /// `magnitude` added to each affected sample.
    Spike,
    /// Value frozen at the first affected sample.
    StuckAt,
    /// Linear offset growing to `magnitude` at the last affected sample.
    Drift,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultSpec {
    pub kind: FaultKind,
    pub start: usize,
    /// Affected indices are `start..start + duration`; 0 is a no-op.
    pub duration: usize,
    pub magnitude: f64,
}

impl FaultSpec {
    pub fn new(kind: FaultKind, start: usize, duration: usize, magnitude: f64) -> Self {
        Self { kind, start, duration, magnitude }
    }
}

/// Samples with ground-truth fault labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledStream {
    pub samples: Vec<Sample>,
    pub labels: Vec<bool>,
}

impl LabeledStream {
    pub fn clean(samples: Vec<Sample>) -> Self {
        let labels = vec![false; samples.len()];
        Self { samples, labels }
    }
}

/// Applies `fault` to a copy of `stream`, labelling exactly the affected indices.
pub fn inject(stream: &LabeledStream, fault: &FaultSpec, seed: u64) -> Result<LabeledStream, SimulateError> {
    let len = stream.samples.len();
    let end = fault.start + fault.duration;
    if fault.duration > 0 && end > len {
        return Err(SimulateError::IndexOutOfRange { start: fault.start, end, len });
    }
    let mut out = stream.clone();
    let mut rng = SplitMix64::new(seed);
    let frozen = out.samples.get(fault.start).map(|s| s.value);
    for (k, i) in (fault.start..end).enumerate() {
        let v = &mut out.samples[i].value;
        match fault.kind {
            FaultKind::NoiseBurst => *v += fault.magnitude * rng.next_normal(),
            FaultKind::Spike => *v += fault.magnitude,
            FaultKind::StuckAt => *v = frozen.expect("start is in range"),
            FaultKind::Drift => *v += fault.magnitude * (k + 1) as f64 / fault.duration as f64,
        }
        out.labels[i] = true;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noisy(n: usize, seed: u64) -> LabeledStream {
        let p = SignalProfile { noise_std: 1.0, seed, ..Default::default() };
        LabeledStream::clean(generate(&p, n).unwrap())
    }

    #[test]
    fn zero_noise_constant() {
        let p = SignalProfile { level: 100.0, ..Default::default() };
        let s = generate(&p, 5).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|x| x.value == 100.0));
        assert_eq!(s[4].timestamp, 4.0);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        assert_eq!(noisy(500, 42), noisy(500, 42));
        assert_ne!(noisy(500, 42), noisy(500, 43));
    }

    #[test]
    fn noise_std_is_honoured() {
        let s = noisy(10_000, 3);
        let n = s.samples.len() as f64;
        let mean = s.samples.iter().map(|x| x.value).sum::<f64>() / n;
        let var = s.samples.iter().map(|x| (x.value - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((0.97..=1.03).contains(&var.sqrt()), "{}", var.sqrt());
    }

    #[test]
    fn profiles_shape_the_base_signal() {
        let fill = SignalProfile { kind: SignalKind::FillCycle, level: 400.0, amplitude: 300.0, period: 100.0, ..Default::default() };
        assert_eq!(fill.base(0.0), 400.0);
        assert_eq!(fill.base(50.0), 250.0);
        assert_eq!(fill.base(100.0), 400.0);
        let ramp = SignalProfile { kind: SignalKind::Ramp, level: 10.0, slope: -0.5, ..Default::default() };
        assert_eq!(ramp.base(4.0), 8.0);
        let sine = SignalProfile { kind: SignalKind::Sine, amplitude: 5.0, period: 4.0, ..Default::default() };
        assert!((sine.base(1.0) - 205.0).abs() < 1e-12);
        assert!(SignalProfile { sample_interval: 0.0, ..Default::default() }.validate().is_err());
        assert!(SignalProfile { noise_std: -1.0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn empty_fault_is_identity() {
        let s = noisy(50, 1);
        let out = inject(&s, &FaultSpec::new(FaultKind::Spike, 10, 0, 5.0), 9).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn stuck_at_freezes() {
        let s = noisy(50, 1);
        let out = inject(&s, &FaultSpec::new(FaultKind::StuckAt, 10, 10, 0.0), 9).unwrap();
        let v10 = s.samples[10].value;
        assert!(out.samples[10..20].iter().all(|x| x.value == v10));
        assert_eq!(out.labels.iter().filter(|&&l| l).count(), 10);
        assert!(out.labels[10..20].iter().all(|&l| l));
    }

    #[test]
    fn drift_and_spike() {
        let s = noisy(20, 1);
        let d = inject(&s, &FaultSpec::new(FaultKind::Drift, 0, 4, 8.0), 0).unwrap();
        for (i, want) in [2.0, 4.0, 6.0, 8.0, 0.0].into_iter().enumerate() {
            assert!((d.samples[i].value - s.samples[i].value - want).abs() < 1e-12);
        }
        let sp = inject(&s, &FaultSpec::new(FaultKind::Spike, 7, 1, 30.0), 0).unwrap();
        assert_eq!(sp.samples[7].value, s.samples[7].value + 30.0);
        assert_eq!(sp.labels.iter().filter(|&&l| l).count(), 1);
    }

    #[test]
    fn noise_burst_scenario_labels() {
        let s = noisy(120, 11);
        let out = inject(&s, &FaultSpec::new(FaultKind::NoiseBurst, 60, 60, 3.0), 12).unwrap();
        assert!(out.labels[..60].iter().all(|&l| !l));
        assert!(out.labels[60..].iter().all(|&l| l));
        for i in 0..60 {
            assert_eq!(out.samples[i].value.to_bits(), s.samples[i].value.to_bits());
        }
    }

    #[test]
    fn out_of_range_fault_fails() {
        let s = noisy(10, 1);
        let err = inject(&s, &FaultSpec::new(FaultKind::Spike, 8, 3, 1.0), 0).unwrap_err();
        assert_eq!(err, SimulateError::IndexOutOfRange { start: 8, end: 11, len: 10 });
    }
}
