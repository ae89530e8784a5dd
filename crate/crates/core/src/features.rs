//! Crisp FIS inputs from a raw stream: current value, absolute rate of change
//! and windowed standard deviation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detectors::Window;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub timestamp: f64,
    pub sensor_id: String,
    pub value: f64,
}

impl Sample {
    pub fn new(timestamp: f64, sensor_id: impl Into<String>, value: f64) -> Self {
        Self { timestamp, sensor_id: sensor_id.into(), value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrispInputs {
    pub distance: f64,
    /// Absolute rate of change, units per second.
    pub roc: f64,
    pub std_dev: f64,
}

impl CrispInputs {
    pub fn to_array(self) -> [f64; 3] {
        [self.distance, self.roc, self.std_dev]
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FeatureError {
    #[error("samples share timestamp {0}")]
    ZeroInterval(f64),
    #[error("timestamp {curr} precedes {prev}")]
    TimeRegression { prev: f64, curr: f64 },
}

/// `|curr - prev| / (t_curr - t_prev)`.
pub fn rate_of_change(prev: &Sample, curr: &Sample) -> Result<f64, FeatureError> {
    rate_between(prev.timestamp, prev.value, curr)
}

fn rate_between(t: f64, v: f64, curr: &Sample) -> Result<f64, FeatureError> {
    let dt = curr.timestamp - t;
    if dt == 0.0 {
        Err(FeatureError::ZeroInterval(t))
    } else if dt < 0.0 {
        Err(FeatureError::TimeRegression { prev: t, curr: curr.timestamp })
    } else {
        Ok((curr.value - v).abs() / dt)
    }
}

/// Inputs for `curr`, with `w` already holding `curr`.
///
/// Stream start (no `prev`) and duplicate timestamps give a rate of 0; a
/// window of fewer than two values gives a deviation of 0.
pub fn extract(w: &Window, prev: Option<&Sample>, curr: &Sample) -> CrispInputs {
    let roc = prev.and_then(|p| rate_of_change(p, curr).ok()).unwrap_or(0.0);
    CrispInputs { distance: curr.value, roc, std_dev: w.std_dev().unwrap_or(0.0) }
}

/// Like [`extract`], but the rate of change is the smaller of the rates
/// against the previous raw reading and against `reference` (the last
/// value forwarded downstream, at the previous sample's timestamp).
///
/// A lone outlier then raises the rate only at the outlier itself and not
/// again when the signal returns to its level.
pub fn extract_with_reference(w: &Window, prev: Option<&Sample>, reference: Option<f64>, curr: &Sample) -> CrispInputs {
    let mut inputs = extract(w, prev, curr);
    if let (Some(p), Some(r)) = (prev, reference) {
        if let Ok(rate) = rate_between(p.timestamp, r, curr) {
            inputs.roc = inputs.roc.min(rate);
        }
    }
    inputs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(t: f64, v: f64) -> Sample {
        Sample::new(t, "s", v)
    }

    #[test]
    fn rate_examples() {
        assert_eq!(rate_of_change(&s(0.0, 10.0), &s(1.0, 10.0)).unwrap(), 0.0);
        assert_eq!(rate_of_change(&s(0.0, 0.0), &s(2.0, 6.0)).unwrap(), 3.0);
        assert_eq!(rate_of_change(&s(0.0, 6.0), &s(2.0, 0.0)).unwrap(), 3.0);
        assert_eq!(rate_of_change(&s(1.0, 0.0), &s(1.0, 6.0)), Err(FeatureError::ZeroInterval(1.0)));
        assert!(matches!(rate_of_change(&s(2.0, 0.0), &s(1.0, 6.0)), Err(FeatureError::TimeRegression { .. })));
    }

    #[test]
    fn extract_examples() {
        let mut w = Window::new(20);
        let first = s(0.0, 100.0);
        w.push(first.value);
        assert_eq!(extract(&w, None, &first), CrispInputs { distance: 100.0, roc: 0.0, std_dev: 0.0 });

        let mut w = Window::new(20);
        let mut prev = None;
        let mut last = None;
        for i in 0..20 {
            let cur = s(i as f64, 50.0);
            w.push(cur.value);
            last = Some(extract(&w, prev.as_ref(), &cur));
            prev = Some(cur);
        }
        assert_eq!(last.unwrap(), CrispInputs { distance: 50.0, roc: 0.0, std_dev: 0.0 });

        let mut w = Window::new(20);
        w.push(0.0);
        w.push(2.0);
        let got = extract(&w, Some(&s(0.0, 0.0)), &s(1.0, 2.0));
        assert_eq!(got.distance, 2.0);
        assert_eq!(got.roc, 2.0);
        assert!((got.std_dev - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reference_rate_takes_the_smaller() {
        let mut w = Window::new(4);
        w.push(10.0);
        w.push(11.0);
        let with_ref = extract_with_reference(&w, Some(&s(0.0, 30.0)), Some(10.0), &s(1.0, 11.0));
        assert_eq!(with_ref.roc, 1.0);
        let spike = extract_with_reference(&w, Some(&s(0.0, 10.0)), Some(10.0), &s(1.0, 30.0));
        assert_eq!(spike.roc, 20.0);
    }

    fn run(values: &[f64]) -> Vec<CrispInputs> {
        let mut w = Window::new(20);
        let mut prev: Option<Sample> = None;
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let cur = s(i as f64 * 0.5, v);
                w.push(v);
                let out = extract(&w, prev.as_ref(), &cur);
                prev = Some(cur);
                out
            })
            .collect()
    }

    proptest! {
        #[test]
        fn shift_invariance(values in prop::collection::vec(-100.0..100.0f64, 1..60), c in -50.0..50.0f64) {
            let shifted: Vec<f64> = values.iter().map(|v| v + c).collect();
            for (a, b) in run(&values).iter().zip(run(&shifted)) {
                prop_assert!((b.distance - a.distance - c).abs() < 1e-9);
                prop_assert!((b.roc - a.roc).abs() < 1e-9);
                prop_assert!((b.std_dev - a.std_dev).abs() < 1e-6);
            }
        }

        #[test]
        fn scale_equivariance(values in prop::collection::vec(-100.0..100.0f64, 1..60), a in 0.1..10.0f64) {
            let scaled: Vec<f64> = values.iter().map(|v| v * a).collect();
            for (x, y) in run(&values).iter().zip(run(&scaled)) {
                prop_assert!((y.distance - a * x.distance).abs() < 1e-9 * a.max(1.0) * 100.0);
                prop_assert!((y.roc - a * x.roc).abs() < 1e-9 * a.max(1.0) * 100.0);
                prop_assert!((y.std_dev - a * x.std_dev).abs() < 1e-6 * a.max(1.0) * 100.0);
            }
        }

        #[test]
        fn constant_streams_are_still(v in -1e3..1e3f64, n in 1usize..80) {
            for out in run(&vec![v; n]) {
                prop_assert_eq!(out.roc, 0.0);
                prop_assert_eq!(out.std_dev, 0.0);
            }
        }
    }
}
