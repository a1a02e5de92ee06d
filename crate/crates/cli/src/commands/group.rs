//! The `group` subcommands: validate, emit, info.

use crate::report::{to_json_pretty, Format, OutputArgs};
use crate::source::GroupSource;
use crate::{CliError, CliResult};
use serde::Serialize;
use std::path::PathBuf;
use tppforge_core::group::{
    has_abelian_index2_subgroup, index2_subgroups, read_table_file, table_file_string,
};

#[derive(clap::Subcommand)]
pub enum GroupCmd {
    /// Check a Cayley table file against the group axioms.
    Validate {
        file: PathBuf,
    },
    /// Write a family's Cayley table file.
    Emit {
        /// Family spec `name:param`.
        #[arg(long)]
        family: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show order, abelian flag, class count and index-2 subgroup count.
    Info {
        #[command(flatten)]
        source: GroupSource,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Serialize)]
struct GroupInfoReport {
    command: &'static str,
    source: String,
    order: usize,
    fingerprint: String,
    abelian: bool,
    class_count: usize,
    index2_subgroups: usize,
    has_abelian_index2_subgroup: bool,
}

pub fn run(cmd: GroupCmd) -> CliResult {
    match cmd {
        GroupCmd::Validate { file } => match read_table_file(&file) {
            Ok(g) => {
                println!("ok: valid group of order {} (fingerprint {})", g.order(), g.fingerprint());
                Ok(0)
            }
            Err(e) => Err(CliError::Invalid(format!("{}: {e}", file.display()))),
        },
        GroupCmd::Emit { family, out } => {
            let g = crate::source::family(&family)?;
            let body = table_file_string(&g);
            match out {
                Some(path) => std::fs::write(&path, body)
                    .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
                None => print!("{body}"),
            }
            Ok(0)
        }
        GroupCmd::Info { source, output } => {
            let (g, name) = source.load()?;
            let report = GroupInfoReport {
                command: "group-info",
                source: name,
                order: g.order(),
                fingerprint: g.fingerprint(),
                abelian: g.is_abelian(),
                class_count: g.class_count(),
                index2_subgroups: index2_subgroups(&g).len(),
                has_abelian_index2_subgroup: has_abelian_index2_subgroup(&g),
            };
            match output.format {
                Format::Json => output.emit(&to_json_pretty(&report)?)?,
                Format::Csv => output.emit(&format!(
                    "source,order,fingerprint,abelian,class_count,index2_subgroups,has_abelian_index2\n\
                     {},{},{},{},{},{},{}\n",
                    report.source,
                    report.order,
                    report.fingerprint,
                    report.abelian,
                    report.class_count,
                    report.index2_subgroups,
                    report.has_abelian_index2_subgroup,
                ))?,
                Format::Text => output.emit(&format!(
                    "group {} (fingerprint {})\norder: {}\nabelian: {}\nconjugacy classes: {}\n\
                     index-2 subgroups: {} (abelian among them: {})",
                    report.source,
                    report.fingerprint,
                    report.order,
                    report.abelian,
                    report.class_count,
                    report.index2_subgroups,
                    report.has_abelian_index2_subgroup,
                ))?,
            }
            Ok(0)
        }
    }
}
