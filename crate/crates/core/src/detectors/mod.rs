//! Variance, uncertainty and PCA/SPE fault detectors.

mod jacobi;
mod pca;
mod window;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use jacobi::symmetric_eigen;
pub use pca::{pca_fit, percentile_of, PcaModel, DEFAULT_SPE_PERCENTILE};
pub use window::Window;

pub const DEFAULT_WINDOW: usize = 20;

#[derive(Debug, Error)]
pub enum DetectorError {
    #[error("need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("degenerate calibration data: {0}")]
    DegenerateData(String),
    #[error("expected {expected} values, got {got}{}", .row.map(|r| format!(" in row {}", r + 1)).unwrap_or_default())]
    DimensionMismatch { expected: usize, got: usize, row: Option<usize> },
    #[error("retained components k={k} must satisfy 1 <= k < {sensors}")]
    InvalidComponents { k: usize, sensors: usize },
    #[error("percentile {0} outside 0..=100")]
    InvalidPercentile(f64),
    #[error("invalid PCA model: {0}")]
    Model(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectorKind {
    Variance,
    Uncertainty,
    Spe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorVerdict {
    pub detector: DetectorKind,
    pub statistic: f64,
    pub threshold: f64,
    pub tripped: bool,
}

impl DetectorVerdict {
    pub fn new(detector: DetectorKind, statistic: f64, threshold: f64) -> Self {
        Self { detector, statistic, threshold, tripped: statistic > threshold }
    }
}

/// Unbiased sample variance of the window.
pub fn window_variance(w: &Window) -> Result<f64, DetectorError> {
    w.variance()
}

/// Type-A standard uncertainty of the window mean, `s / sqrt(n)`.
pub fn uncertainty_index(w: &Window) -> Result<f64, DetectorError> {
    let var = w.variance()?;
    Ok((var / w.len() as f64).sqrt())
}

pub fn variance_verdict(w: &Window, threshold: f64) -> Result<DetectorVerdict, DetectorError> {
    Ok(DetectorVerdict::new(DetectorKind::Variance, window_variance(w)?, threshold))
}

pub fn uncertainty_verdict(w: &Window, threshold: f64) -> Result<DetectorVerdict, DetectorError> {
    Ok(DetectorVerdict::new(DetectorKind::Uncertainty, uncertainty_index(w)?, threshold))
}

pub fn spe_verdict(model: &PcaModel, x: &[f64]) -> Result<DetectorVerdict, DetectorError> {
    Ok(DetectorVerdict::new(DetectorKind::Spe, model.spe(x)?, model.spe_threshold))
}
