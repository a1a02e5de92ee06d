//! The `search` command: run either algorithm over one group, optionally
//! sharded, parallel, and resumable from a checkpoint.

use crate::report::{csv_field, to_json_pretty, Format, OutputArgs};
use crate::source::GroupSource;
use crate::{CliError, CliResult};
use serde::Serialize;
use std::path::{Path, PathBuf};
use tppforge_core::algebra::verify_realization;
use tppforge_core::baseline::{
    baseline_candidate_count, baseline_search_shard, baseline_sharded, TppTestKind,
};
use tppforge_core::group::Group;
use tppforge_core::search::{
    first_row_count, make_shards, search_mmm, search_sharded, Checkpoint, Rank, SearchError,
    SearchMode, SearchOutcome, SearchShard,
};
use tppforge_core::tpp::TppTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    /// Marked-vector search with quotient pruning.
    New,
    /// Plain enumeration of disjoint subset triples.
    Baseline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TestChoice {
    Quotient,
    Definition,
}

#[derive(clap::Args)]
pub struct SearchArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Triple side length m (searching <m,m,m>).
    #[arg(long, short)]
    m: usize,
    /// Visit the whole space instead of stopping at the first triple.
    #[arg(long, conflicts_with = "first")]
    all: bool,
    /// Stop at the first triple (default).
    #[arg(long)]
    first: bool,
    #[arg(long, value_enum, default_value = "new")]
    algo: Algorithm,
    /// TPP test used by the baseline algorithm.
    #[arg(long, value_enum, default_value = "quotient")]
    tpp_test: TestChoice,
    /// First-row rank this run starts at (with --row-count).
    #[arg(long, requires = "row_count", conflicts_with = "shard_size")]
    start_row: Option<u128>,
    /// Number of first rows to process (with --start-row).
    #[arg(long, requires = "start_row")]
    row_count: Option<u128>,
    /// Split the run into shards of this many first rows.
    #[arg(long)]
    shard_size: Option<u64>,
    /// Worker threads for sharded runs.
    #[arg(long, default_value = "1")]
    jobs: usize,
    /// Checkpoint file (requires --shard-size); resumes when it exists.
    #[arg(long, requires = "shard_size")]
    checkpoint: Option<PathBuf>,
    /// Stop after this many shards in this invocation (checkpoint stays
    /// resumable).
    #[arg(long, requires = "checkpoint")]
    max_shards: Option<u64>,
    /// Verify each found triple with this many exact random-matrix trials.
    #[arg(long)]
    verify: Option<u32>,
    /// Seed for the verification trials.
    #[arg(long, default_value = "0")]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct GroupInfo {
    source: String,
    order: usize,
    fingerprint: String,
}

#[derive(Serialize)]
struct StatsReport {
    candidates_tested: u64,
    rows_s_visited: u64,
    rows_t_visited: u64,
    rows_u_visited: u64,
    triples_found: u64,
    elapsed_ms: f64,
}

impl From<&tppforge_core::SearchStats> for StatsReport {
    fn from(s: &tppforge_core::SearchStats) -> Self {
        StatsReport {
            candidates_tested: s.candidates_tested,
            rows_s_visited: s.rows_s_visited,
            rows_t_visited: s.rows_t_visited,
            rows_u_visited: s.rows_u_visited,
            triples_found: s.triples_found,
            elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Serialize)]
struct ShardingReport {
    shard_size: u64,
    shards_total: u64,
    shards_done: u64,
    next_shard_rank: Rank,
}

#[derive(Serialize)]
struct SearchReport {
    command: &'static str,
    group: GroupInfo,
    m: usize,
    mode: &'static str,
    algorithm: &'static str,
    status: &'static str,
    triples: Vec<TppTriple>,
    stats: StatsReport,
    baseline_candidate_count: Option<Rank>,
    reduction_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sharding: Option<ShardingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport>,
}

#[derive(Serialize)]
struct VerificationReport {
    trials: u32,
    seed: u64,
    all_verified: bool,
}

fn map_search_err(e: SearchError) -> CliError {
    match e {
        SearchError::InfeasibleSize { .. } => CliError::Infeasible(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    }
}

pub fn run(args: SearchArgs) -> CliResult {
    let (group, source) = args.source.load()?;
    let mode = if args.all { SearchMode::All } else { SearchMode::First };
    let mode_name = if args.all { "all" } else { "first" };

    let mut status = "exhausted";
    let outcome;
    let mut sharding = None;

    match (&args.checkpoint, args.shard_size) {
        (Some(cp_path), Some(size)) => {
            let (out, report, paused) =
                run_checkpointed(&group, &args, mode, cp_path, size)?;
            outcome = out;
            sharding = Some(report);
            if paused {
                status = "paused";
            }
        }
        (None, Some(size)) => {
            let shards = make_shards(group.order(), args.m, size).map_err(map_search_err)?;
            let total = shards.len() as u64;
            outcome = run_algorithm_sharded(&group, &args, mode, &shards)?;
            sharding = Some(ShardingReport {
                shard_size: size,
                shards_total: total,
                shards_done: total,
                next_shard_rank: first_row_count(group.order(), args.m),
            });
        }
        (None, None) => {
            let shard = args.start_row.map(|start| SearchShard {
                start_row: start,
                row_count: args.row_count.unwrap(),
            });
            outcome = run_algorithm(&group, &args, mode, shard)?;
        }
        (Some(_), None) => {
            return Err(CliError::Invalid("--checkpoint requires --shard-size".into()))
        }
    }

    if !outcome.triples.is_empty() && status != "paused" {
        status = "found";
    }

    let verification = match args.verify {
        Some(trials) => {
            let mut all = true;
            for tr in &outcome.triples {
                let v = verify_realization(&group, tr, trials, args.seed)
                    .map_err(|e| CliError::Invalid(e.to_string()))?;
                all &= v.verified;
            }
            Some(VerificationReport { trials, seed: args.seed, all_verified: all })
        }
        None => None,
    };

    let baseline_count = baseline_candidate_count(group.order(), args.m).ok();
    let reduction = baseline_count.and_then(|b| {
        (outcome.stats.candidates_tested > 0)
            .then(|| b as f64 / outcome.stats.candidates_tested as f64)
    });

    let report = SearchReport {
        command: "search",
        group: GroupInfo {
            source,
            order: group.order(),
            fingerprint: group.fingerprint(),
        },
        m: args.m,
        mode: mode_name,
        algorithm: match args.algo {
            Algorithm::New => "new",
            Algorithm::Baseline => "baseline",
        },
        status,
        stats: StatsReport::from(&outcome.stats),
        triples: outcome.triples,
        baseline_candidate_count: baseline_count,
        reduction_factor: reduction,
        sharding,
        verification,
    };

    emit(&args.output, &report)?;
    let failed_verification = report.verification.as_ref().is_some_and(|v| !v.all_verified);
    Ok(match report.status {
        _ if failed_verification => 1,
        "found" | "paused" => 0,
        _ => 1,
    })
}

fn test_kind(args: &SearchArgs) -> TppTestKind {
    match args.tpp_test {
        TestChoice::Quotient => TppTestKind::Quotient,
        TestChoice::Definition => TppTestKind::Definition,
    }
}

fn run_algorithm(
    group: &Group,
    args: &SearchArgs,
    mode: SearchMode,
    shard: Option<SearchShard>,
) -> Result<SearchOutcome, CliError> {
    match args.algo {
        Algorithm::New => search_mmm(group, args.m, mode, shard).map_err(map_search_err),
        Algorithm::Baseline => {
            baseline_search_shard(group, args.m, mode, test_kind(args), shard)
                .map_err(map_search_err)
        }
    }
}

fn run_algorithm_sharded(
    group: &Group,
    args: &SearchArgs,
    mode: SearchMode,
    shards: &[SearchShard],
) -> Result<SearchOutcome, CliError> {
    match args.algo {
        Algorithm::New => {
            search_sharded(group, args.m, mode, shards, args.jobs).map_err(map_search_err)
        }
        Algorithm::Baseline => {
            baseline_sharded(group, args.m, mode, test_kind(args), shards, args.jobs)
                .map_err(map_search_err)
        }
    }
}

/// Sharded run with a checkpoint written after every completed chunk.
/// Returns the merged outcome, the sharding report, and whether the run
/// paused before finishing.
fn run_checkpointed(
    group: &Group,
    args: &SearchArgs,
    mode: SearchMode,
    cp_path: &Path,
    size: u64,
) -> Result<(SearchOutcome, ShardingReport, bool), CliError> {
    if args.algo == Algorithm::Baseline {
        return Err(CliError::Invalid("checkpointing applies to the new algorithm only".into()));
    }
    let shards = make_shards(group.order(), args.m, size).map_err(map_search_err)?;
    let fingerprint = group.fingerprint();

    let mut done: Vec<SearchShard> = Vec::new();
    let mut merged = SearchOutcome::default();
    let mut shards_done: u64 = 0;
    let mut next_rank: Rank = 0;

    if cp_path.exists() {
        let text = std::fs::read_to_string(cp_path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", cp_path.display())))?;
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| CliError::Invalid(e.to_string()))?;
        if cp.group_fingerprint != fingerprint {
            return Err(CliError::Invalid(
                "checkpoint belongs to a different group (fingerprint mismatch)".into(),
            ));
        }
        if cp.m != args.m || cp.mode != mode {
            return Err(CliError::Invalid(
                "checkpoint parameters (m, mode) do not match this invocation".into(),
            ));
        }
        if !shards.iter().any(|s| s.start_row == cp.next_shard_rank)
            && cp.next_shard_rank != first_row_count(group.order(), args.m)
        {
            return Err(CliError::Invalid(
                "checkpoint rank does not align with this shard size".into(),
            ));
        }
        merged.triples = cp.triples;
        merged.stats = cp.stats;
        shards_done = cp.shards_done;
        next_rank = cp.next_shard_rank;
    }

    let pending: Vec<SearchShard> =
        shards.iter().copied().filter(|s| s.start_row >= next_rank).collect();
    let mut paused = false;
    let mut processed_here: u64 = 0;
    let chunk = args.jobs.max(1);

    for window in pending.chunks(chunk) {
        if let Some(limit) = args.max_shards {
            if processed_here >= limit {
                paused = true;
                break;
            }
        }
        let take = match args.max_shards {
            Some(limit) => ((limit - processed_here) as usize).min(window.len()),
            None => window.len(),
        };
        let slice = &window[..take];
        let out = search_sharded(group, args.m, mode, slice, args.jobs).map_err(map_search_err)?;
        merged.stats.merge(&out.stats);
        merged.triples.extend(out.triples);
        shards_done += slice.len() as u64;
        processed_here += slice.len() as u64;
        next_rank = slice.last().unwrap().end();
        done.extend_from_slice(slice);

        let cp = Checkpoint {
            group_fingerprint: fingerprint.clone(),
            m: args.m,
            mode,
            next_shard_rank: next_rank,
            shards_done,
            triples: merged.triples.clone(),
            stats: merged.stats,
        };
        let body = serde_json::to_string_pretty(&cp)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let tmp = cp_path.with_extension("tmp");
        std::fs::write(&tmp, body)
            .and_then(|()| std::fs::rename(&tmp, cp_path))
            .map_err(|e| CliError::Invalid(format!("{}: {e}", cp_path.display())))?;

        if take < window.len() {
            paused = true;
            break;
        }
        if mode == SearchMode::First && !merged.triples.is_empty() {
            break;
        }
    }
    let report = ShardingReport {
        shard_size: size,
        shards_total: shards.len() as u64,
        shards_done,
        next_shard_rank: next_rank,
    };
    Ok((merged, report, paused))
}

fn emit(output: &OutputArgs, report: &SearchReport) -> Result<(), CliError> {
    match output.format {
        Format::Json => output.emit(&to_json_pretty(report)?),
        Format::Csv => {
            let mut body = String::from(
                "status,source,order,fingerprint,m,mode,algorithm,candidates_tested,\
                 rows_s,rows_t,rows_u,triples_found,elapsed_ms,baseline_candidate_count,\
                 reduction_factor\n",
            );
            body.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{:.3},{},{}\n",
                report.status,
                csv_field(&report.group.source),
                report.group.order,
                report.group.fingerprint,
                report.m,
                report.mode,
                report.algorithm,
                report.stats.candidates_tested,
                report.stats.rows_s_visited,
                report.stats.rows_t_visited,
                report.stats.rows_u_visited,
                report.stats.triples_found,
                report.stats.elapsed_ms,
                report.baseline_candidate_count.map_or(String::new(), |c| c.to_string()),
                report.reduction_factor.map_or(String::new(), |f| format!("{f:.2}")),
            ));
            output.emit(&body)
        }
        Format::Text => {
            let mut body = String::new();
            body.push_str(&format!(
                "group {} (order {}, fingerprint {})\n",
                report.group.source, report.group.order, report.group.fingerprint
            ));
            body.push_str(&format!(
                "search <{m},{m},{m}> mode={} algorithm={}: {}\n",
                report.mode,
                report.algorithm,
                report.status,
                m = report.m
            ));
            body.push_str(&format!(
                "stats: {} TPP tests, rows S/T/U {}/{}/{}, {:.1} ms\n",
                report.stats.candidates_tested,
                report.stats.rows_s_visited,
                report.stats.rows_t_visited,
                report.stats.rows_u_visited,
                report.stats.elapsed_ms
            ));
            if let (Some(b), f) = (report.baseline_candidate_count, report.reduction_factor) {
                match f {
                    Some(f) => body.push_str(&format!(
                        "baseline would test {b} candidates (reduction factor {f:.1})\n"
                    )),
                    None => body.push_str(&format!(
                        "baseline would test {b} candidates (reduction factor inf)\n"
                    )),
                }
            }
            if let Some(s) = &report.sharding {
                body.push_str(&format!(
                    "shards: {}/{} done (size {}), next rank {}\n",
                    s.shards_done, s.shards_total, s.shard_size, s.next_shard_rank
                ));
            }
            if let Some(v) = &report.verification {
                body.push_str(&format!(
                    "verification: {} trials/triple, all_verified={}\n",
                    v.trials, v.all_verified
                ));
            }
            for tr in &report.triples {
                body.push_str(&format!("triple S={:?} T={:?} U={:?}\n", tr.s, tr.t, tr.u));
            }
            output.emit(body.trim_end())
        }
    }
}
