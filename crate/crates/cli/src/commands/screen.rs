//! The `screen` command: rank bounds and candidate classification over a
//! data file of character degree patterns.

use crate::report::{csv_field, to_json_pretty, Format, OutputArgs};
use crate::source::data_dir;
use crate::{CliError, CliResult};
use std::path::PathBuf;
use tppforge_core::screen::{screen_table, RankTable, ScreenOptions};

#[derive(clap::Args)]
pub struct ScreenArgs {
    /// Candidate CSV (gap_id, order, pattern, cayley_file); defaults to
    /// candidates.csv in the data directory (TPPFORGE_DATA overrides).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Load Cayley tables and run the structural exclusions (index-2
    /// subgroup checks); slower.
    #[arg(long)]
    with_groups: bool,
    /// Override the per-degree rank bound table (degree,bound CSV).
    #[arg(long)]
    rank_table: Option<PathBuf>,
    /// Use degree^3 for degrees outside the rank table instead of failing.
    #[arg(long)]
    cubic_fallback: bool,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn run(args: ScreenArgs) -> CliResult {
    let data = args.data.unwrap_or_else(|| data_dir().join("candidates.csv"));
    let rank_table = match &args.rank_table {
        Some(path) => {
            RankTable::load(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?
        }
        None => RankTable::default(),
    };
    let opts = ScreenOptions {
        with_groups: args.with_groups,
        rank_table,
        cubic_fallback: args.cubic_fallback,
    };
    let report = screen_table(&data, &opts)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", data.display())))?;

    match args.output.format {
        Format::Json => args.output.emit(&to_json_pretty(&report)?)?,
        Format::Csv => {
            let mut body = String::from(
                "gap_id,order,pattern,t_count,b_max,lower,upper,classification,reasons,group_checked\n",
            );
            for row in &report.rows {
                let reasons = row
                    .reasons
                    .iter()
                    .map(|r| format!("{r:?}"))
                    .collect::<Vec<_>>()
                    .join("; ");
                body.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    csv_field(&row.gap_id),
                    row.order,
                    csv_field(&row.pattern),
                    row.t_count,
                    row.b_max,
                    row.lower,
                    row.upper,
                    row.classification,
                    csv_field(&reasons),
                    row.group_checked,
                ));
            }
            for err in &report.errors {
                body.push_str(&format!(
                    "{},,,,,,,error,{},\n",
                    csv_field(&err.gap_id),
                    csv_field(&format!("line {}: {}", err.line, err.message)),
                ));
            }
            args.output.emit(&body)?;
        }
        Format::Text => {
            let mut body = format!(
                "{:<9} {:>5} {:<16} {:>3} {:>2} {:>5} {:>5}  {}\n",
                "gap id", "order", "pattern", "T", "b", "lower", "upper", "class"
            );
            for row in &report.rows {
                body.push_str(&format!(
                    "{:<9} {:>5} {:<16} {:>3} {:>2} {:>5} {:>5}  {}{}\n",
                    row.gap_id,
                    row.order,
                    row.pattern,
                    row.t_count,
                    row.b_max,
                    row.lower,
                    row.upper,
                    row.classification,
                    if row.group_checked { " (group checked)" } else { "" },
                ));
            }
            for err in &report.errors {
                body.push_str(&format!(
                    "{:<9} line {}: {}\n",
                    err.gap_id, err.line, err.message
                ));
            }
            args.output.emit(body.trim_end())?;
        }
    }
    Ok(if report.errors.is_empty() { 0 } else { 2 })
}
