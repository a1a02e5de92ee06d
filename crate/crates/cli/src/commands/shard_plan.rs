//! The `shard-plan` command: emit a manifest of first-row ranges.

use crate::report::{to_json_pretty, Format, OutputArgs};
use crate::source::GroupSource;
use crate::{CliError, CliResult};
use serde::Serialize;
use tppforge_core::search::{first_row_count, make_shards, Rank, SearchShard};

#[derive(clap::Args)]
pub struct ShardPlanArgs {
    /// Group order (alternative to --family/--table; only the order matters
    /// for planning).
    #[arg(long, conflicts_with_all = ["family", "table"])]
    order: Option<usize>,
    #[command(flatten)]
    source: GroupSource,
    #[arg(long, short)]
    m: usize,
    #[arg(long)]
    shard_size: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct ShardPlan {
    command: &'static str,
    order: usize,
    m: usize,
    shard_size: u64,
    total_rows: Rank,
    shard_count: usize,
    shards: Vec<SearchShard>,
}

pub fn run(args: ShardPlanArgs) -> CliResult {
    let order = match args.order {
        Some(o) => {
            if o == 0 || o > 255 {
                return Err(CliError::Invalid("order must be in 1..=255".into()));
            }
            o
        }
        None => args.source.load()?.0.order(),
    };
    if args.m == 0 || args.m > order {
        return Err(CliError::Invalid(format!("m={} invalid for order {order}", args.m)));
    }
    let shards = make_shards(order, args.m, args.shard_size)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let total = first_row_count(order, args.m);
    debug_assert_eq!(total, shards.iter().map(|s| s.row_count).sum::<Rank>());

    let plan = ShardPlan {
        command: "shard-plan",
        order,
        m: args.m,
        shard_size: args.shard_size,
        total_rows: total,
        shard_count: shards.len(),
        shards,
    };

    match args.output.format {
        Format::Json => args.output.emit(&to_json_pretty(&plan)?)?,
        Format::Csv => {
            let mut body = String::from("index,start_row,row_count\n");
            for (i, s) in plan.shards.iter().enumerate() {
                body.push_str(&format!("{i},{},{}\n", s.start_row, s.row_count));
            }
            args.output.emit(&body)?;
        }
        Format::Text => {
            let mut body = format!(
                "order {} m {}: {} first rows in {} shards of size {}\n",
                plan.order, plan.m, plan.total_rows, plan.shard_count, plan.shard_size
            );
            for (i, s) in plan.shards.iter().enumerate() {
                body.push_str(&format!("shard {i}: rows [{}, {})\n", s.start_row, s.end()));
            }
            args.output.emit(body.trim_end())?;
        }
    }
    Ok(0)
}
