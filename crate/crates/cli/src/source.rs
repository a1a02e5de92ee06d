//! Group sources: `name:param` family specs or Cayley table files.

use crate::CliError;
use std::path::PathBuf;
use tppforge_core::group::{
    alternating, cyclic, dicyclic, dihedral, read_table_file, Group,
};

/// Parses a family spec such as `dihedral:8` (the parameter is the family
/// parameter, not the order: `dihedral:8` is the dihedral group of order 16).
pub fn family(spec: &str) -> Result<Group, CliError> {
    let (name, param) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Invalid(format!("family spec {spec:?} must look like name:n")))?;
    let n: usize = param
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad family parameter {param:?}")))?;
    let build = match name.to_ascii_lowercase().as_str() {
        "cyclic" | "c" => cyclic(n),
        "dihedral" | "d" | "dih" => dihedral(n),
        "dicyclic" | "dic" | "q" => dicyclic(n),
        "symmetric" | "s" | "sym" => symmetric_checked(n),
        "alternating" | "a" | "alt" => alternating(n),
        other => {
            return Err(CliError::Invalid(format!(
                "unknown family {other:?} (cyclic, dihedral, dicyclic, symmetric, alternating)"
            )))
        }
    };
    build.map_err(|e| CliError::Invalid(format!("family {spec}: {e}")))
}

fn symmetric_checked(n: usize) -> Result<Group, tppforge_core::GroupError> {
    tppforge_core::group::symmetric(n)
}

/// Shared clap arguments for commands that take one group source.
#[derive(clap::Args)]
pub struct GroupSource {
    /// Family spec `name:param`, e.g. `dihedral:8`, `s:3`, `cyclic:44`.
    #[arg(long, conflicts_with = "table")]
    pub family: Option<String>,
    /// Path to a Cayley table file.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

impl GroupSource {
    pub fn load(&self) -> Result<(Group, String), CliError> {
        match (&self.family, &self.table) {
            (Some(spec), None) => Ok((family(spec)?, spec.clone())),
            (None, Some(path)) => {
                let g = read_table_file(path)
                    .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
                Ok((g, path.display().to_string()))
            }
            _ => Err(CliError::Invalid(
                "exactly one group source required: --family or --table".into(),
            )),
        }
    }
}

/// Data directory: `TPPFORGE_DATA` overrides the shipped `data/` directory.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("TPPFORGE_DATA") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from("data"),
    }
}
