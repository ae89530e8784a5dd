//! Streaming sensor-data validation.
//!
//! Each reading is scored by a Mamdani fuzzy system over its value, rate of
//! change and windowed standard deviation. Low-confidence readings are
//! replaced by a smoothed last-good estimate, and prolonged runs of faulty
//! readings produce [`FaultReport`]s. Variance, uncertainty and PCA/SPE
//! detectors run alongside and annotate each outcome.

pub mod detectors;
pub mod features;
pub mod fis;
pub mod fuzzy;
pub mod io;
pub mod pipeline;
pub mod score;
pub mod simulate;

pub use detectors::{DetectorKind, DetectorVerdict, PcaModel, Window};
pub use features::{CrispInputs, Sample};
pub use fis::{parse_fis, serialize_fis, validate_fis, Diagnostic, Severity};
pub use fuzzy::{default_rulebase, Engine, FuzzySystem};
pub use pipeline::{FaultReport, Flag, Flags, PipelineConfig, SensorPipeline, ValidationOutcome};
