//! The `verify` command: check that a triple realizes matrix multiplication
//! via the exact group-ring embedding.

use crate::report::{to_json_pretty, Format, OutputArgs};
use crate::source::GroupSource;
use crate::{CliError, CliResult};
use serde::Serialize;
use std::path::PathBuf;
use tppforge_core::algebra::{verify_realization, VerifyOutcome};
use tppforge_core::tpp::TppTriple;

#[derive(clap::Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Triple JSON file: {"order": n, "s": [...], "t": [...], "u": [...]}.
    #[arg(long)]
    triple: PathBuf,
    #[arg(long, default_value = "100")]
    trials: u32,
    #[arg(long, default_value = "0")]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    group_fingerprint: String,
    order: usize,
    shape: (usize, usize, usize),
    seed: u64,
    #[serde(flatten)]
    outcome: VerifyOutcome,
}

pub fn run(args: VerifyArgs) -> CliResult {
    let (group, _) = args.source.load()?;
    let text = std::fs::read_to_string(&args.triple)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", args.triple.display())))?;
    let raw: TppTriple =
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(e.to_string()))?;
    let triple = TppTriple::new(raw.order, raw.s, raw.t, raw.u)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    if triple.order != group.order() {
        return Err(CliError::Invalid(format!(
            "triple is for order {}, group has order {}",
            triple.order,
            group.order()
        )));
    }

    let outcome = verify_realization(&group, &triple, args.trials, args.seed)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let verified = outcome.verified;
    let report = VerifyReport {
        command: "verify",
        group_fingerprint: group.fingerprint(),
        order: group.order(),
        shape: triple.shape(),
        seed: args.seed,
        outcome,
    };

    match args.output.format {
        Format::Json => args.output.emit(&to_json_pretty(&report)?)?,
        Format::Csv => {
            let body = format!(
                "verified,trials,order,shape,fingerprint\n{},{},{},{}x{}x{},{}\n",
                report.outcome.verified,
                report.outcome.trials,
                report.order,
                report.shape.0,
                report.shape.1,
                report.shape.2,
                report.group_fingerprint,
            );
            args.output.emit(&body)?;
        }
        Format::Text => {
            let mut body = format!(
                "verify <{},{},{}> over order {} (fingerprint {}): {}\n",
                report.shape.0,
                report.shape.1,
                report.shape.2,
                report.order,
                report.group_fingerprint,
                if verified { "verified" } else { "FAILED" },
            );
            body.push_str(&format!("trials: {}, seed: {}\n", report.outcome.trials, report.seed));
            if let Some(f) = &report.outcome.first_failure {
                body.push_str(&format!(
                    "first failure at trial {}: A={:?} B={:?}\nexpected {:?}\ngot      {:?}\n",
                    f.trial, f.a.entries, f.b.entries, f.expected.entries, f.got.entries
                ));
            }
            args.output.emit(body.trim_end())?;
        }
    }
    Ok(if verified { 0 } else { 1 })
}
