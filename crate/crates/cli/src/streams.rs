use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::Result;

/// `None` or `-` mean standard input/output.
pub fn named(path: &Option<PathBuf>) -> Option<&Path> {
    path.as_deref().filter(|p| p.as_os_str() != "-")
}

pub fn reader(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p).map_err(|e| CliError::io(Some(p), e))?)),
        None => Box::new(BufReader::new(io::stdin().lock())),
    })
}

pub fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(Some(p), e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn read_text(path: Option<&Path>) -> Result<String> {
    let mut text = String::new();
    reader(path)?.read_to_string(&mut text).map_err(|e| CliError::io(path, e))?;
    Ok(text)
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut w = writer(path)?;
    w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}
