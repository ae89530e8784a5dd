use std::path::Path;

use sensorval::io::IoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{}: {source}", .path.as_deref().unwrap_or("<stdin>"))]
    Io {
        path: Option<String>,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn io(path: Option<&Path>, source: std::io::Error) -> Self {
        Self::Io { path: path.map(|p| p.display().to_string()), source }
    }

    /// `src` names the file the error came from, when known.
    pub fn from_io(src: Option<&Path>, e: IoError) -> Self {
        let name = src.map_or_else(|| "<stdin>".to_owned(), |p| p.display().to_string());
        match e {
            IoError::Parse { .. } => Self::Parse(format!("{name}: {e}")),
            IoError::Fis { .. } => Self::Parse(e.to_string()),
            IoError::Config(_) => Self::Usage(e.to_string()),
            IoError::Io(source) => Self::io(src, source),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Io { .. } => 2,
            Self::Parse(_) => 3,
        }
    }
}
