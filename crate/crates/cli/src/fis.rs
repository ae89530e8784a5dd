use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sensorval::fis::parse_fis_full;
use sensorval::fuzzy::control_surface;
use sensorval::{default_rulebase, serialize_fis, Diagnostic, Engine, FuzzySystem};

use crate::error::CliError;
use crate::streams::{named, read_text, write_text};
use crate::{Result, Status};

#[derive(Debug, clap::Subcommand)]
pub enum Command {
    /// Print diagnostics; exit 0 only when there are none.
    Check {
        /// `.fis` file; `-` is stdin.
        path: PathBuf,
    },
    /// Rewrite in canonical form.
    Canon {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample one output over a grid of two inputs as `x,y,output` CSV.
    Surface {
        path: PathBuf,
        /// Input on the x axis, by name or 1-based index.
        #[arg(short, long, default_value = "2")]
        x: String,
        /// Input on the y axis, by name or 1-based index.
        #[arg(short, long, default_value = "3")]
        y: String,
        /// Grid size, `NxM` or `N`.
        #[arg(long, default_value = "50x50")]
        grid: String,
        /// Comma-separated values for every input; axis entries are ignored.
        /// Defaults to each range's midpoint.
        #[arg(long)]
        at: Option<String>,
        /// Output variable, 1-based.
        #[arg(long, default_value_t = 1)]
        output_index: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the built-in sensor-confidence rulebase.
    Default {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn source(path: &Path) -> Option<&Path> {
    (path.as_os_str() != "-").then_some(path)
}

fn print_diagnostics(name: &str, diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{name}: {d}");
    }
}

fn load(path: &Path) -> Result<FuzzySystem> {
    let src = source(path);
    let text = read_text(src)?;
    let parsed = parse_fis_full(&text);
    let name = path.display().to_string();
    match parsed.system {
        Some(sys) => {
            print_diagnostics(&name, &parsed.diagnostics);
            Ok(sys)
        }
        None => {
            print_diagnostics(&name, &parsed.diagnostics);
            let errors = parsed.diagnostics.iter().filter(|d| d.is_error()).count();
            Err(CliError::Parse(format!("{name}: {errors} error(s)")))
        }
    }
}

fn axis(sys: &FuzzySystem, key: &str) -> Result<usize> {
    if let Some(i) = sys.inputs.iter().position(|v| v.name == key) {
        return Ok(i);
    }
    match key.parse::<usize>() {
        Ok(i) if (1..=sys.inputs.len()).contains(&i) => Ok(i - 1),
        _ => Err(CliError::usage(format!("no input '{key}' (inputs are 1..={} or by name)", sys.inputs.len()))),
    }
}

fn grid(key: &str) -> Result<(usize, usize)> {
    let bad = || CliError::usage(format!("grid '{key}' is not N or NxM"));
    let dim = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match key.split_once(['x', 'X']) {
        Some((a, b)) => Ok((dim(a)?, dim(b)?)),
        None => dim(key).map(|n| (n, n)),
    }
}

pub fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Check { path } => {
            let text = read_text(source(&path))?;
            let parsed = parse_fis_full(&text);
            print_diagnostics(&path.display().to_string(), &parsed.diagnostics);
            match (&parsed.system, parsed.diagnostics.is_empty()) {
                (None, _) => Err(CliError::Parse(format!("{}: not a valid rulebase", path.display()))),
                (Some(_), true) => Ok(Status::Ok),
                (Some(_), false) => Ok(Status::Findings),
            }
        }
        Command::Canon { path, output } => {
            let sys = load(&path)?;
            write_text(named(&output), &serialize_fis(&sys))?;
            Ok(Status::Ok)
        }
        Command::Default { output } => {
            write_text(named(&output), &serialize_fis(&default_rulebase()))?;
            Ok(Status::Ok)
        }
        Command::Surface { path, x, y, grid: g, at, output_index, output } => {
            let sys = load(&path)?;
            let (ax, ay) = (axis(&sys, &x)?, axis(&sys, &y)?);
            let fixed: Vec<f64> = match at {
                Some(s) => s
                    .split(',')
                    .map(|v| v.trim().parse::<f64>().map_err(|_| CliError::usage(format!("--at value '{v}' is not a number"))))
                    .collect::<Result<_>>()?,
                None => sys.inputs.iter().map(|v| v.range.midpoint()).collect(),
            };
            let k = output_index.checked_sub(1).ok_or_else(|| CliError::usage("--output-index is 1-based"))?;
            let engine = Engine::new(sys).map_err(|e| CliError::usage(e.to_string()))?;
            let surface =
                control_surface(&engine, ax, ay, &fixed, grid(&g)?, k).map_err(|e| CliError::usage(e.to_string()))?;
            let mut csv = String::from("x,y,output\n");
            for (a, &xv) in surface.xs.iter().enumerate() {
                for (b, &yv) in surface.ys.iter().enumerate() {
                    let cell = surface.values[a][b].map_or(String::new(), |v| v.to_string());
                    writeln!(csv, "{xv},{yv},{cell}").expect("string write");
                }
            }
            write_text(named(&output), &csv)?;
            Ok(Status::Ok)
        }
    }
}
