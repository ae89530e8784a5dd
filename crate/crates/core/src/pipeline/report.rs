use serde::{Deserialize, Serialize};

use super::{Flag, Flags};

/// Statistics of the raw readings inside a fault episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSummary {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub mean_confidence: f64,
}

/// A run of at least `report_after` consecutive faulty samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultReport {
    pub sensor_id: String,
    pub start: f64,
    pub end: f64,
    pub sample_count: usize,
    pub min_confidence: f64,
    /// Flags raised on at least half of the episode's samples.
    pub dominant_flags: Vec<Flag>,
    pub summary: SegmentSummary,
}

#[derive(Debug, Clone)]
struct Episode {
    start: f64,
    end: f64,
    count: usize,
    min_conf: f64,
    conf_sum: f64,
    mean: f64,
    m2: f64,
    min: f64,
    max: f64,
    flag_counts: [usize; Flag::ALL.len()],
}

impl Episode {
    fn new(t: f64) -> Self {
        Self {
            start: t,
            end: t,
            count: 0,
            min_conf: f64::INFINITY,
            conf_sum: 0.0,
            mean: 0.0,
            m2: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            flag_counts: [0; Flag::ALL.len()],
        }
    }

    fn add(&mut self, t: f64, raw: f64, confidence: f64, flags: Flags) {
        self.end = self.end.max(t);
        self.count += 1;
        self.min_conf = self.min_conf.min(confidence);
        self.conf_sum += confidence;
        if raw.is_finite() {
            let delta = raw - self.mean;
            self.mean += delta / self.count as f64;
            self.m2 += delta * (raw - self.mean);
            self.min = self.min.min(raw);
            self.max = self.max.max(raw);
        }
        for f in flags.iter() {
            self.flag_counts[f as usize] += 1;
        }
    }

    fn report(&self, sensor_id: &str) -> FaultReport {
        let dominant_flags = Flag::ALL
            .into_iter()
            .filter(|&f| 2 * self.flag_counts[f as usize] >= self.count && self.flag_counts[f as usize] > 0)
            .collect();
        let std_dev = if self.count > 1 { (self.m2 / (self.count - 1) as f64).sqrt() } else { 0.0 };
        FaultReport {
            sensor_id: sensor_id.to_owned(),
            start: self.start,
            end: self.end,
            sample_count: self.count,
            min_confidence: self.min_conf,
            dominant_flags,
            summary: SegmentSummary {
                mean: self.mean,
                std_dev,
                min: self.min,
                max: self.max,
                mean_confidence: self.conf_sum / self.count as f64,
            },
        }
    }
}

/// Counts consecutive faulty samples and closes an episode into a report
/// when it ends, if it reached `report_after` samples.
#[derive(Debug, Clone)]
pub struct FaultTracker {
    sensor_id: String,
    fault_threshold: f64,
    report_after: usize,
    open: Option<Episode>,
}

impl FaultTracker {
    pub fn new(sensor_id: impl Into<String>, fault_threshold: f64, report_after: usize) -> Self {
        Self { sensor_id: sensor_id.into(), fault_threshold, report_after, open: None }
    }

    pub fn is_faulty(&self, confidence: f64) -> bool {
        confidence < self.fault_threshold
    }

    /// Length of the run in progress.
    pub fn run_length(&self) -> usize {
        self.open.as_ref().map_or(0, |e| e.count)
    }

    /// Feeds one sample; `faulty` overrides the threshold test when `Some`.
    pub fn observe(
        &mut self,
        timestamp: f64,
        raw: f64,
        confidence: f64,
        flags: Flags,
        faulty: Option<bool>,
    ) -> Option<FaultReport> {
        if faulty.unwrap_or_else(|| self.is_faulty(confidence)) {
            self.open.get_or_insert_with(|| Episode::new(timestamp)).add(timestamp, raw, confidence, flags);
            None
        } else {
            self.close()
        }
    }

    /// Closes the open episode, reporting it when long enough.
    pub fn close(&mut self) -> Option<FaultReport> {
        let ep = self.open.take()?;
        (ep.count >= self.report_after).then(|| ep.report(&self.sensor_id))
    }
}
