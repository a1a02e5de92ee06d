//! Exhaustive `⟨m,m,m⟩` triple search over a fixed group.
//!
//! Candidates are generated bottom-up: row S wanders over all ascending
//! supports in lexicographic order, its quotient remainder is marked, row T
//! is built over the remaining free cells (with quotient conflicts pruning
//! whole subtrees), and row U enumerates free cells below both. Every fully
//! formed candidate already satisfies the membership conditions
//! `Q(S)∩Q(T) = Q(S)∩U = Q(T)∩U = {1}` by construction; the final
//! quotient-based test decides whether it is an actual TPP triple.
//!
//! First rows can be partitioned into [`SearchShard`]s; shards share nothing
//! but the immutable group, so they parallelize freely and a coordinator
//! merges stats by summation and triples in shard order.

pub mod marked;
mod rank;

pub use rank::{
    binomial, first_row_count, first_row_to_rank, make_shards, rank_to_first_row, Rank,
    SearchShard,
};

use crate::bitset::ElemSet;
use crate::group::Group;
use crate::tpp::{neumann_feasible, quotient_from_support, tpp_test_from_quotients, TppTriple};
use marked::{MarkedVector, Row};
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("infeasible size: m={m} requires order >= {required}, group has order {order}")]
    InfeasibleSize { m: usize, order: usize, required: usize },
    #[error("shard [{start}, {start}+{count}) exceeds the first-row count {total}")]
    ShardOutOfRange { start: Rank, count: Rank, total: Rank },
    #[error("rank {rank} out of range: first-row count is {total}")]
    RankOutOfRange { rank: Rank, total: Rank },
    #[error("first row must be an ascending subset of the non-identity positions")]
    InvalidFirstRow,
    #[error("shard size must be at least 1")]
    InvalidShardSize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Stop at the first triple found.
    First,
    /// Visit the whole candidate space.
    All,
}

/// Counters for one search run. `candidates_tested` counts invocations of
/// the final TPP test only; row generation work is tracked separately.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub candidates_tested: u64,
    pub rows_s_visited: u64,
    pub rows_t_visited: u64,
    pub rows_u_visited: u64,
    pub triples_found: u64,
    #[serde(default)]
    pub elapsed: Duration,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.candidates_tested += other.candidates_tested;
        self.rows_s_visited += other.rows_s_visited;
        self.rows_t_visited += other.rows_t_visited;
        self.rows_u_visited += other.rows_u_visited;
        self.triples_found += other.triples_found;
        self.elapsed += other.elapsed;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub triples: Vec<TppTriple>,
    pub stats: SearchStats,
}

/// Checkpoint written between shards; a resumed run reproduces the same
/// final result set as an uninterrupted one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub group_fingerprint: String,
    pub m: usize,
    pub mode: SearchMode,
    /// Start row of the first shard not yet processed.
    pub next_shard_rank: Rank,
    pub shards_done: u64,
    pub triples: Vec<TppTriple>,
    pub stats: SearchStats,
}

fn feasibility_gate(g: &Group, m: usize) -> Result<(), SearchError> {
    let required = m * (2 * m - 1);
    if !neumann_feasible(m, m, m, g.order()) {
        return Err(SearchError::InfeasibleSize { m, order: g.order(), required });
    }
    Ok(())
}

/// Searches `g` for basic `⟨m,m,m⟩` TPP triples under the convention
/// `min(supp S) < min(supp T) < min(supp U)`.
///
/// With `mode = All` and no shard, every candidate satisfying the membership
/// conditions is generated exactly once and the returned triples are exactly
/// those passing the TPP test. A shard restricts row S to the given range of
/// first-row ranks.
pub fn search_mmm(
    g: &Group,
    m: usize,
    mode: SearchMode,
    shard: Option<SearchShard>,
) -> Result<SearchOutcome, SearchError> {
    if m == 0 {
        return Err(SearchError::InfeasibleSize { m, order: g.order(), required: 1 });
    }
    feasibility_gate(g, m)?;
    let start = Instant::now();
    let order = g.order();
    let total = first_row_count(order, m);
    let (start_rank, row_budget) = match shard {
        Some(s) => {
            if s.row_count == 0 || s.start_row + s.row_count > total {
                return Err(SearchError::ShardOutOfRange {
                    start: s.start_row,
                    count: s.row_count,
                    total,
                });
            }
            (s.start_row, s.row_count)
        }
        None => (0, total),
    };

    let mut outcome = SearchOutcome::default();

    // The trivial shape: ({1},{1},{1}) is vacuously a TPP triple.
    if m == 1 {
        outcome.triples.push(TppTriple::new(order, vec![0], vec![0], vec![0]).unwrap());
        outcome.stats.triples_found = 1;
        outcome.stats.elapsed = start.elapsed();
        return Ok(outcome);
    }

    let k = m - 1;
    let mut mv = MarkedVector::new(order);
    mv.place_row(Row::S, &rank_to_first_row(order, m, start_rank)?);

    let stats = &mut outcome.stats;
    let mut rows_done: Rank = 0;
    'search: loop {
        stats.rows_s_visited += 1;
        let ok = mv.mark_quotient(g, Row::S);
        debug_assert!(ok, "marking Q(S) cannot conflict: no other rows exist");
        let qs = quotient_from_support(g, mv.support(Row::S));
        if mv.seed_row(Row::T, k) {
            loop {
                stats.rows_t_visited += 1;
                if mv.mark_quotient(g, Row::T) {
                    let qt = quotient_from_support(g, mv.support(Row::T));
                    if mv.seed_row(Row::U, k) {
                        loop {
                            stats.rows_u_visited += 1;
                            debug_assert!(candidate_satisfies_membership(&qs, &qt, mv.support(Row::U)));
                            let qu = quotient_from_support(g, mv.support(Row::U));
                            stats.candidates_tested += 1;
                            if tpp_test_from_quotients(g, &qs, &qt, &qu) {
                                let triple = TppTriple::new(
                                    order,
                                    mv.row_set(Row::S),
                                    mv.row_set(Row::T),
                                    mv.row_set(Row::U),
                                )
                                .expect("rows are non-empty in-range sets");
                                stats.triples_found += 1;
                                outcome.triples.push(triple);
                                if mode == SearchMode::First {
                                    break 'search;
                                }
                            }
                            if !mv.next_candidate_row(Row::U) {
                                break;
                            }
                        }
                    }
                    mv.unmark_quotient(Row::T);
                }
                if !mv.next_candidate_row(Row::T) {
                    break;
                }
            }
        }
        mv.unmark_quotient(Row::S);
        rows_done += 1;
        if rows_done == row_budget {
            mv.clear_row(Row::S);
            debug_assert!(mv.is_all_free(), "all quotient marks must be undone");
            break;
        }
        if !mv.next_candidate_row(Row::S) {
            debug_assert!(mv.is_all_free(), "exhausted search leaves a zero vector");
            break;
        }
    }

    outcome.stats.elapsed = start.elapsed();
    Ok(outcome)
}

/// The membership half of the candidate conditions: `Q(S) ∩ Q(T)`,
/// `Q(S) ∩ U` and `Q(T) ∩ U` all trivial. Search candidates satisfy this by
/// construction; asserted per candidate in debug builds.
fn candidate_satisfies_membership(qs: &ElemSet, qt: &ElemSet, u_support: &[usize]) -> bool {
    let mut u: ElemSet = u_support.iter().copied().collect();
    u.insert(0);
    qs.meets_only_identity(qt) && qs.meets_only_identity(&u) && qt.meets_only_identity(&u)
}

/// Runs the given shards on `jobs` worker threads and merges the outcomes in
/// shard order, so the result is identical to a sequential run.
pub fn search_sharded(
    g: &Group,
    m: usize,
    mode: SearchMode,
    shards: &[SearchShard],
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    let jobs = jobs.max(1);
    if jobs == 1 || shards.len() <= 1 {
        let mut merged = SearchOutcome::default();
        for shard in shards {
            let out = search_mmm(g, m, mode, Some(*shard))?;
            merged.stats.merge(&out.stats);
            merged.triples.extend(out.triples);
        }
        return Ok(merged);
    }

    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<Result<SearchOutcome, SearchError>>>> =
        shards.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(shards.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= shards.len() {
                    break;
                }
                let out = search_mmm(g, m, mode, Some(shards[i]));
                *results[i].lock().unwrap() = Some(out);
            });
        }
    });

    let mut merged = SearchOutcome::default();
    for cell in results {
        let out = cell.into_inner().unwrap().expect("worker ran every shard")?;
        merged.stats.merge(&out.stats);
        merged.triples.extend(out.triples);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, symmetric};
    use crate::tpp::tpp_test_definition;

    #[test]
    fn feasibility_gate_errors() {
        let c44 = cyclic(44).unwrap();
        assert_eq!(
            search_mmm(&c44, 5, SearchMode::All, None).unwrap_err(),
            SearchError::InfeasibleSize { m: 5, order: 44, required: 45 }
        );
        let c14 = cyclic(14).unwrap();
        assert!(matches!(
            search_mmm(&c14, 3, SearchMode::All, None),
            Err(SearchError::InfeasibleSize { .. })
        ));
    }

    #[test]
    fn trivial_m1() {
        let g = cyclic(1).unwrap();
        let out = search_mmm(&g, 1, SearchMode::All, None).unwrap();
        assert_eq!(out.triples.len(), 1);
        assert_eq!(out.triples[0], TppTriple::new(1, vec![0], vec![0], vec![0]).unwrap());
    }

    #[test]
    fn s3_finds_the_transposition_triple() {
        let s3 = symmetric(3).unwrap();
        let out = search_mmm(&s3, 2, SearchMode::All, None).unwrap();
        assert!(!out.triples.is_empty());
        let t12 = s3.find_by_label("(1 2)").unwrap();
        let t13 = s3.find_by_label("(1 3)").unwrap();
        let t23 = s3.find_by_label("(2 3)").unwrap();
        let mut family = [vec![0, t12], vec![0, t13], vec![0, t23]];
        for set in &mut family {
            set.sort_unstable();
        }
        family.sort();
        let found = out.triples.iter().any(|tr| {
            let mut sets = [tr.s.clone(), tr.t.clone(), tr.u.clone()];
            sets.sort();
            sets == family
        });
        assert!(found, "transposition triple not found: {:?}", out.triples);
        for tr in &out.triples {
            assert!(tpp_test_definition(&s3, tr).unwrap());
        }
    }

    #[test]
    fn dihedral8_realizes_nothing_at_m3() {
        let d16 = dihedral(8).unwrap();
        let out = search_mmm(&d16, 3, SearchMode::All, None).unwrap();
        assert!(out.triples.is_empty());
        assert_eq!(out.stats.rows_s_visited as u128, first_row_count(16, 3));
    }

    #[test]
    fn c3_cubed_direct_factors_witness() {
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&direct_product(&c3, &c3).unwrap(), &c3).unwrap();
        let out = search_mmm(&g, 3, SearchMode::First, None).unwrap();
        assert_eq!(out.triples.len(), 1);
        assert!(tpp_test_definition(&g, &out.triples[0]).unwrap());
    }

    #[test]
    fn shard_union_equals_full_run() {
        let s3 = symmetric(3).unwrap();
        let full = search_mmm(&s3, 2, SearchMode::All, None).unwrap();
        let shards = make_shards(6, 2, 2).unwrap();
        let merged = search_sharded(&s3, 2, SearchMode::All, &shards, 2).unwrap();
        assert_eq!(merged.triples, full.triples);
        assert_eq!(merged.stats.candidates_tested, full.stats.candidates_tested);
        assert_eq!(merged.stats.rows_s_visited, full.stats.rows_s_visited);
    }

    #[test]
    fn shard_out_of_range() {
        let s3 = symmetric(3).unwrap();
        let bad = SearchShard { start_row: 4, row_count: 3 };
        assert!(matches!(
            search_mmm(&s3, 2, SearchMode::All, Some(bad)),
            Err(SearchError::ShardOutOfRange { .. })
        ));
    }

    #[test]
    fn returned_triples_share_only_identity() {
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&direct_product(&c3, &c3).unwrap(), &c3).unwrap();
        let out = search_mmm(&g, 3, SearchMode::All, None).unwrap();
        assert!(out.stats.triples_found > 0);
        for tr in &out.triples {
            for (a, b) in [(&tr.s, &tr.t), (&tr.s, &tr.u), (&tr.t, &tr.u)] {
                let shared: Vec<_> = a.iter().filter(|x| b.contains(x)).collect();
                assert_eq!(shared, vec![&0]);
            }
        }
    }
}
