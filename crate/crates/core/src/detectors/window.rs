use std::collections::VecDeque;

use super::DetectorError;

/// Bounded FIFO of recent readings with running mean and variance.
///
/// Push and evict use the Welford recurrence and its inverse, O(1) per
/// sample. The accumulators are rebuilt from the stored values once every
/// `capacity` evictions, and sooner when the running sum of squares has
/// fallen far below the largest term it absorbed since the last rebuild.
#[derive(Debug, Clone)]
pub struct Window {
    values: VecDeque<f64>,
    capacity: usize,
    mean: f64,
    m2: f64,
    evictions: usize,
    peak: f64,
}

/// Rebuild once `m2` falls below this fraction of `peak`.
const CANCELLATION: f64 = 1e-4;

impl Window {
    /// # Panics
    /// If `capacity` is zero.
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "window capacity must be positive");
        Self { values: VecDeque::with_capacity(capacity), capacity, mean: 0.0, m2: 0.0, evictions: 0, peak: 0.0 }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied()
    }

    pub fn push(&mut self, x: f64) {
        if self.values.len() == self.capacity {
            let old = self.values.pop_front().expect("full window is non-empty");
            self.evict(old);
            self.evictions += 1;
        }
        self.values.push_back(x);
        let n = self.values.len() as f64;
        let delta = x - self.mean;
        self.mean += delta / n;
        let term = delta * (x - self.mean);
        self.m2 += term;
        self.peak = self.peak.max(term.abs()).max(self.m2);
        if self.evictions >= self.capacity || self.m2 < CANCELLATION * self.peak {
            self.rebuild();
        }
    }

    /// Overwrites the most recent value.
    pub fn replace_last(&mut self, x: f64) {
        if let Some(last) = self.values.pop_back() {
            self.evict(last);
            self.push(x);
        }
    }

    fn evict(&mut self, x: f64) {
        let n = self.values.len();
        if n == 0 {
            self.mean = 0.0;
            self.m2 = 0.0;
            return;
        }
        let n = n as f64;
        let old_mean = self.mean;
        self.mean = old_mean - (x - old_mean) / n;
        let term = (x - old_mean) * (x - self.mean);
        self.peak = self.peak.max(term.abs()).max(self.m2);
        self.m2 -= term;
        if self.m2 < 0.0 {
            self.m2 = 0.0;
        }
    }

    fn rebuild(&mut self) {
        self.evictions = 0;
        self.mean = 0.0;
        self.m2 = 0.0;
        for (i, &x) in self.values.iter().enumerate() {
            let delta = x - self.mean;
            self.mean += delta / (i + 1) as f64;
            self.m2 += delta * (x - self.mean);
        }
        self.peak = self.m2;
    }

    pub fn mean(&self) -> Option<f64> {
        (!self.values.is_empty()).then_some(self.mean)
    }

    /// Unbiased sample variance (divides by `n - 1`).
    pub fn variance(&self) -> Result<f64, DetectorError> {
        let n = self.values.len();
        if n < 2 {
            return Err(DetectorError::InsufficientData { needed: 2, got: n });
        }
        Ok(self.m2.max(0.0) / (n - 1) as f64)
    }

    pub fn std_dev(&self) -> Result<f64, DetectorError> {
        self.variance().map(f64::sqrt)
    }
}
