use std::path::PathBuf;

use sensorval::io::{read_labels, read_outcomes};
use sensorval::score::score;

use crate::error::CliError;
use crate::streams::{named, reader, write_text};
use crate::{Result, Status};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Outcome JSON lines from `validate`; `-` is stdin.
    #[arg(long, default_value = "-")]
    pub outcomes: PathBuf,
    /// `index,faulty` CSV from `simulate`.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<Status> {
    let src = named(&Some(args.outcomes.clone())).map(|p| p.to_path_buf());
    let labels_src = named(&Some(args.labels.clone())).map(|p| p.to_path_buf());
    if src.is_none() && labels_src.is_none() {
        return Err(CliError::usage("outcomes and labels cannot both come from stdin"));
    }
    let outcomes = read_outcomes(reader(src.as_deref())?).map_err(|e| CliError::from_io(src.as_deref(), e))?;
    let labels =
        read_labels(reader(labels_src.as_deref())?).map_err(|e| CliError::from_io(labels_src.as_deref(), e))?;
    if outcomes.len() != labels.len() {
        return Err(CliError::usage(format!("{} outcomes but {} labels", outcomes.len(), labels.len())));
    }
    let predicted: Vec<bool> = outcomes.iter().map(|o| o.reconstructed).collect();
    let s = score(&predicted, &labels);
    write_text(named(&args.output), &(serde_json::to_string_pretty(&s).expect("score serializes") + "\n"))?;
    Ok(Status::Ok)
}
