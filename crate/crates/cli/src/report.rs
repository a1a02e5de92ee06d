//! Report emission: JSON, CSV and human-readable text.

use crate::CliError;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    pub fn emit(&self, body: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, body)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display()))),
            None => {
                println!("{body}");
                Ok(())
            }
        }
    }
}

pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Quotes a CSV field when it contains separators or quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
