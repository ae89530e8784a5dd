use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::IoError;
use crate::detectors::PcaModel;
use crate::fis::parse_fis;
use crate::pipeline::{PipelineConfig, SpeFusion};

/// On-disk form of [`PipelineConfig`]. Every key is optional; missing keys
/// keep their defaults. Relative paths resolve against the config file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub fis: Option<PathBuf>,
    pub accept_threshold: Option<f64>,
    pub fault_threshold: Option<f64>,
    pub report_after: Option<usize>,
    pub reconstruction_alpha: Option<f64>,
    pub warmup: Option<usize>,
    pub window: Option<usize>,
    #[serde(default)]
    pub detectors: DetectorsFile,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorsFile {
    pub variance_threshold: Option<f64>,
    pub uncertainty_threshold: Option<f64>,
    /// JSON model written by `pca fit`.
    pub spe_model: Option<PathBuf>,
    /// Sensor ids in model column order.
    pub spe_sensors: Option<Vec<String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        toml::from_str(text).map_err(|e| IoError::Config(e.to_string()))
    }

    /// Overlays the file's values on `base`, loading referenced files.
    pub fn apply(&self, mut base: PipelineConfig, dir: &Path) -> Result<PipelineConfig, IoError> {
        if let Some(path) = &self.fis {
            base.fis = load_fis(&dir.join(path))?;
        }
        macro_rules! overlay {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { base.$field = v; } )* };
        }
        overlay!(accept_threshold, fault_threshold, report_after, reconstruction_alpha, warmup, window);
        let d = &self.detectors;
        if d.variance_threshold.is_some() {
            base.detectors.variance_threshold = d.variance_threshold;
        }
        if d.uncertainty_threshold.is_some() {
            base.detectors.uncertainty_threshold = d.uncertainty_threshold;
        }
        match (&d.spe_model, &d.spe_sensors) {
            (Some(model), Some(sensors)) => {
                let path = dir.join(model);
                let text = std::fs::read_to_string(&path)?;
                let model = PcaModel::from_json(&text).map_err(|e| IoError::Config(format!("{}: {e}", path.display())))?;
                base.detectors.spe = Some(SpeFusion { model, sensors: sensors.clone() });
            }
            (None, None) => {}
            _ => return Err(IoError::Config("detectors.spe_model and detectors.spe_sensors must be given together".into())),
        }
        Ok(base)
    }
}

pub fn load_fis(path: &Path) -> Result<crate::FuzzySystem, IoError> {
    let text = std::fs::read_to_string(path)?;
    parse_fis(&text).map_err(|diagnostics| IoError::Fis { path: path.display().to_string(), diagnostics })
}

/// Reads a TOML config file on top of the defaults.
pub fn load_config(path: &Path) -> Result<PipelineConfig, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file = ConfigFile::parse(&text)?;
    file.apply(PipelineConfig::default(), path.parent().unwrap_or(Path::new(".")))
}
