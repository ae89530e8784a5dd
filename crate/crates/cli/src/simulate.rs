use std::path::PathBuf;
use std::str::FromStr;

use sensorval::io::{write_labels, write_samples, StreamFormat};
use sensorval::simulate::{generate, inject, FaultKind, FaultSpec, LabeledStream, SignalKind, SignalProfile};

use crate::error::CliError;
use crate::streams::{named, writer};
use crate::validate::Format;
use crate::{Result, Status};

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Signal {
    Constant,
    Ramp,
    Sine,
    FillCycle,
}

/// `kind:start:duration[:magnitude]`, e.g. `noise-burst:60:60:1.5`.
#[derive(Debug, Clone)]
pub struct FaultArg(FaultSpec);

impl FromStr for FaultArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("'{s}' is not kind:start:duration[:magnitude]"));
        }
        let kind = match parts[0] {
            "spike" => FaultKind::Spike,
            "noise-burst" => FaultKind::NoiseBurst,
            "stuck-at" => FaultKind::StuckAt,
            "drift" => FaultKind::Drift,
            k => return Err(format!("unknown fault kind '{k}' (spike, noise-burst, stuck-at, drift)")),
        };
        let index = |p: &str| p.parse::<usize>().map_err(|_| format!("'{p}' is not a sample index"));
        let magnitude = match parts.get(3) {
            Some(m) => m.parse::<f64>().ok().filter(|m| m.is_finite()).ok_or(format!("'{m}' is not a finite magnitude"))?,
            None if kind == FaultKind::StuckAt => 0.0,
            None => return Err(format!("fault '{s}' needs a magnitude")),
        };
        Ok(Self(FaultSpec::new(kind, index(parts[1])?, index(parts[2])?, magnitude)))
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Number of samples.
    #[arg(short = 'n', long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "constant")]
    pub signal: Signal,
    #[arg(long, default_value_t = 200.0)]
    pub level: f64,
    /// Units per second, for `ramp`.
    #[arg(long, default_value_t = 0.0)]
    pub slope: f64,
    /// Sine amplitude, or the fill-cycle drop per period.
    #[arg(long, default_value_t = 0.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 60.0)]
    pub period: f64,
    /// Standard deviation of the additive white gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    pub noise_std: f64,
    /// Seconds between samples.
    #[arg(long, default_value_t = 1.0)]
    pub interval: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "sensor")]
    pub sensor_id: String,
    /// Fault to inject, `kind:start:duration[:magnitude]`; repeatable.
    #[arg(long = "fault")]
    pub faults: Vec<FaultArg>,
    /// Stream destination; `-` is stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Ground-truth `index,faulty` CSV.
    #[arg(short, long)]
    pub labels: Option<PathBuf>,
    /// Defaults to the output file's extension, CSV on stdout.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Injects `faults` in order; fault `j` draws from `seed * 31 + j`.
pub fn build(profile: &SignalProfile, n: usize, faults: &[FaultSpec]) -> Result<LabeledStream> {
    let samples = generate(profile, n).map_err(|e| CliError::usage(e.to_string()))?;
    let mut stream = LabeledStream::clean(samples);
    for (j, f) in faults.iter().enumerate() {
        let seed = profile.seed.wrapping_mul(31).wrapping_add(j as u64);
        stream = inject(&stream, f, seed).map_err(|e| CliError::usage(e.to_string()))?;
    }
    Ok(stream)
}

pub fn run(args: Args) -> Result<Status> {
    let kind = match args.signal {
        Signal::Constant => SignalKind::Constant,
        Signal::Ramp => SignalKind::Ramp,
        Signal::Sine => SignalKind::Sine,
        Signal::FillCycle => SignalKind::FillCycle,
    };
    let profile = SignalProfile {
        kind,
        level: args.level,
        slope: args.slope,
        amplitude: args.amplitude,
        period: args.period,
        noise_std: args.noise_std,
        sample_interval: args.interval,
        seed: args.seed,
        sensor_id: args.sensor_id.clone(),
    };
    let faults: Vec<FaultSpec> = args.faults.iter().map(|f| f.0).collect();
    let out = named(&args.output);
    let labels = named(&args.labels);
    if out.is_none() && args.labels.is_some() && labels.is_none() {
        return Err(CliError::usage("stream and labels cannot both go to stdout"));
    }
    if args.labels.is_none() && !faults.is_empty() {
        eprintln!("sensorval: note: no --labels file; fault labels are discarded");
    }
    let stream = build(&profile, args.samples, &faults)?;

    let format = match (args.format, out) {
        (Some(f), _) => f.into(),
        (None, Some(p)) => StreamFormat::from_path(p),
        (None, None) => StreamFormat::Csv,
    };
    write_samples(writer(out)?, &stream.samples, format).map_err(|e| CliError::io(out, e))?;
    if args.labels.is_some() {
        write_labels(writer(labels)?, &stream.labels).map_err(|e| CliError::io(labels, e))?;
    }
    Ok(Status::Ok)
}
