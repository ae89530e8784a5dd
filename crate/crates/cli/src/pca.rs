use std::fmt::Write as _;
use std::path::PathBuf;

use sensorval::detectors::{pca_fit, DEFAULT_SPE_PERCENTILE};
use sensorval::io::read_matrix;
use sensorval::PcaModel;

use crate::error::CliError;
use crate::streams::{named, read_text, reader, write_text};
use crate::{Result, Status};

#[derive(Debug, clap::Subcommand)]
pub enum Command {
    /// Fit a model to calibration rows (one column per fused sensor).
    Fit {
        /// Numeric CSV; `-` is stdin.
        calibration: PathBuf,
        /// Retained components; must be below the sensor count.
        #[arg(short, long, default_value_t = 1)]
        components: usize,
        /// Calibration SPE percentile used as the alarm threshold.
        #[arg(long, default_value_t = DEFAULT_SPE_PERCENTILE)]
        percentile: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write `index,spe,tripped` for every row of a numeric CSV.
    Spe {
        model: PathBuf,
        data: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn matrix(path: &PathBuf) -> Result<Vec<Vec<f64>>> {
    let src = named(&Some(path.clone())).map(|p| p.to_path_buf());
    read_matrix(reader(src.as_deref())?).map_err(|e| CliError::from_io(src.as_deref(), e))
}

pub fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Fit { calibration, components, percentile, output } => {
            let rows = matrix(&calibration)?;
            let model = pca_fit(&rows, components, percentile).map_err(|e| CliError::usage(e.to_string()))?;
            write_text(named(&output), &(model.to_json() + "\n"))?;
            Ok(Status::Ok)
        }
        Command::Spe { model, data, output } => {
            let text = read_text(Some(&model))?;
            let model = PcaModel::from_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", model.display())))?;
            let mut csv = String::from("index,spe,tripped\n");
            let mut tripped = 0;
            for (i, row) in matrix(&data)?.iter().enumerate() {
                let spe = model.spe(row).map_err(|e| CliError::Parse(format!("row {}: {e}", i + 1)))?;
                let over = spe > model.spe_threshold;
                tripped += over as usize;
                writeln!(csv, "{i},{spe},{}", u8::from(over)).expect("string write");
            }
            write_text(named(&output), &csv)?;
            Ok(if tripped > 0 { Status::Findings } else { Status::Ok })
        }
    }
}
