use thiserror::Error;

/// Anything that ends the run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config error at line {line}, column {column}: {message}")]
    Config {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] tiltchow::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let text = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = text.strip_suffix(&suffix).unwrap_or(&text).to_string();
        CliError::Config {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
