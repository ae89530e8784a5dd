use std::io::Write;
use std::path::PathBuf;

use sensorval::io::{load_config, write_json_line, SampleReader, StreamFormat};
use sensorval::pipeline::Validator;
use sensorval::{FaultReport, PipelineConfig};

use crate::error::CliError;
use crate::streams::{named, reader, writer};
use crate::{Result, Status};

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

impl From<Format> for StreamFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => StreamFormat::Csv,
            Format::Jsonl => StreamFormat::Jsonl,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Samples as `timestamp,sensor_id,value` CSV or JSON lines; `-` is stdin.
    pub input: Option<PathBuf>,
    /// Input format; sniffed from the first line when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML pipeline config. Flags below override its values.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// Rulebase to use instead of the built-in one.
    #[arg(long)]
    pub fis: Option<PathBuf>,
    /// Outcome JSON lines; `-` is stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON array of fault reports. Printed to stderr when omitted.
    #[arg(short, long)]
    pub reports: Option<PathBuf>,
    #[arg(long)]
    pub accept_threshold: Option<f64>,
    #[arg(long)]
    pub fault_threshold: Option<f64>,
    #[arg(long)]
    pub report_after: Option<usize>,
    /// Smoothing factor of the last-good estimate.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub warmup: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub variance_threshold: Option<f64>,
    #[arg(long)]
    pub uncertainty_threshold: Option<f64>,
}

impl Args {
    fn pipeline_config(&self) -> Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(p) => load_config(p).map_err(|e| CliError::from_io(Some(p), e))?,
            None => PipelineConfig::default(),
        };
        if let Some(p) = &self.fis {
            cfg.fis = sensorval::io::load_fis(p).map_err(|e| CliError::from_io(Some(p), e))?;
        }
        macro_rules! flag {
            ($($arg:ident => $field:ident),*) => { $( if let Some(v) = self.$arg { cfg.$field = v; } )* };
        }
        flag!(accept_threshold => accept_threshold, fault_threshold => fault_threshold, report_after => report_after,
              alpha => reconstruction_alpha, warmup => warmup, window => window);
        if self.variance_threshold.is_some() {
            cfg.detectors.variance_threshold = self.variance_threshold;
        }
        if self.uncertainty_threshold.is_some() {
            cfg.detectors.uncertainty_threshold = self.uncertainty_threshold;
        }
        Ok(cfg)
    }
}

pub fn run(args: Args) -> Result<Status> {
    let mut validator = Validator::new(args.pipeline_config()?).map_err(|e| CliError::usage(e.to_string()))?;
    let input = named(&args.input);
    let out_path = named(&args.output);
    let samples = SampleReader::new(reader(input)?, args.format.map(Into::into));
    let mut out = writer(out_path)?;

    let (mut count, mut reconstructed) = (0usize, 0usize);
    let mut reports: Vec<FaultReport> = Vec::new();
    for sample in samples {
        let sample = sample.map_err(|e| CliError::from_io(input, e))?;
        let step = validator.process(&sample);
        count += 1;
        reconstructed += step.outcome.reconstructed as usize;
        reports.extend(step.report);
        write_json_line(&mut out, &step.outcome).map_err(|e| CliError::io(out_path, e))?;
    }
    reports.extend(validator.finish());
    out.flush().map_err(|e| CliError::io(out_path, e))?;

    let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    match named(&args.reports) {
        Some(p) => crate::streams::write_text(Some(p), &(json + "\n"))?,
        None if !reports.is_empty() => eprintln!("{json}"),
        None => {}
    }
    eprintln!("samples: {count}, reconstructed: {reconstructed}, reports: {}", reports.len());
    Ok(if reports.is_empty() { Status::Ok } else { Status::Findings })
}
