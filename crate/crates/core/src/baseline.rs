//! Plain enumeration baseline for `⟨m,m,m⟩` searches.
//!
//! Enumerates every ordered triple of pairwise-disjoint `(m-1)`-subsets of
//! the non-identity positions, adjoins the identity to each, and runs a TPP
//! test per candidate. No quotient pruning happens, so the number of tests
//! is exactly `C(n,m-1)·C(n-m+1,m-1)·C(n-2m+2,m-1)` with `n = |G|-1`. The
//! returned triple set is normalized to the `min(S) < min(T) < min(U)` role
//! convention so it compares directly against [`crate::search::search_mmm`].

use crate::group::Group;
use crate::search::{
    binomial, first_row_count, rank_to_first_row, Rank, SearchError, SearchMode, SearchOutcome,
    SearchShard, SearchStats,
};
use crate::tpp::{neumann_feasible, tpp_test_definition, tpp_test_quotient, TppTriple};
use std::time::Instant;

/// Which TPP test the baseline runs per candidate. The quotient test is the
/// default; the definition test is available for cross-checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TppTestKind {
    Definition,
    Quotient,
}

/// Number of candidates the baseline submits to the TPP test in `All` mode.
pub fn baseline_candidate_count(order: usize, m: usize) -> Result<Rank, SearchError> {
    if m == 0 || order + 2 < 3 * m {
        return Err(SearchError::InfeasibleSize { m, order, required: 3 * m - 2 });
    }
    let n = order - 1;
    let k = m - 1;
    Ok(binomial(n, k) * binomial(n - k, k) * binomial(n - 2 * k, k))
}

/// Exhaustive baseline search; see the module docs for the enumeration
/// convention and count semantics.
pub fn baseline_search(
    g: &Group,
    m: usize,
    mode: SearchMode,
    test: TppTestKind,
) -> Result<SearchOutcome, SearchError> {
    baseline_search_shard(g, m, mode, test, None)
}

/// Baseline search restricted to a range of first-subset ranks; the S'
/// enumeration order matches `rank_to_first_row`, so shards compose exactly
/// as they do for the marked-vector search.
pub fn baseline_search_shard(
    g: &Group,
    m: usize,
    mode: SearchMode,
    test: TppTestKind,
    shard: Option<SearchShard>,
) -> Result<SearchOutcome, SearchError> {
    if m == 0 {
        return Err(SearchError::InfeasibleSize { m, order: g.order(), required: 1 });
    }
    let required = m * (2 * m - 1);
    if !neumann_feasible(m, m, m, g.order()) {
        return Err(SearchError::InfeasibleSize { m, order: g.order(), required });
    }
    let start = Instant::now();
    let order = g.order();
    let n = order - 1;
    let k = m - 1;

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

    let run_test = |triple: &TppTriple, stats: &mut SearchStats| -> bool {
        stats.candidates_tested += 1;
        match test {
            TppTestKind::Definition => tpp_test_definition(g, triple).expect("sets are in range"),
            TppTestKind::Quotient => tpp_test_quotient(g, triple).expect("candidates are basic"),
        }
    };

    let mut outcome = SearchOutcome::default();
    let positions: Vec<usize> = (1..=n).collect();

    let mut s_combo = match start_rank {
        0 => Combinations::new(positions.len(), k),
        rank => {
            let row = rank_to_first_row(order, m, rank)?;
            Combinations::starting_at(positions.len(), &row.iter().map(|p| p - 1).collect::<Vec<_>>())
        }
    };
    'outer: while let Some(s_idx) = s_combo.next() {
        if outcome.stats.rows_s_visited as Rank == row_budget {
            break;
        }
        outcome.stats.rows_s_visited += 1;
        let s_set: Vec<usize> = s_idx.iter().map(|&i| positions[i]).collect();
        let rest_t: Vec<usize> =
            positions.iter().copied().filter(|p| !s_set.contains(p)).collect();

        let mut t_combo = Combinations::new(rest_t.len(), k);
        while let Some(t_idx) = t_combo.next() {
            outcome.stats.rows_t_visited += 1;
            let t_set: Vec<usize> = t_idx.iter().map(|&i| rest_t[i]).collect();
            let rest_u: Vec<usize> =
                rest_t.iter().copied().filter(|p| !t_set.contains(p)).collect();

            let mut u_combo = Combinations::new(rest_u.len(), k);
            while let Some(u_idx) = u_combo.next() {
                outcome.stats.rows_u_visited += 1;
                let u_set: Vec<usize> = u_idx.iter().map(|&i| rest_u[i]).collect();

                let triple = TppTriple::new(
                    order,
                    std::iter::once(0).chain(s_set.iter().copied()).collect(),
                    std::iter::once(0).chain(t_set.iter().copied()).collect(),
                    std::iter::once(0).chain(u_set.iter().copied()).collect(),
                )
                .expect("non-empty in-range sets");

                if run_test(&triple, &mut outcome.stats) {
                    outcome.stats.triples_found += 1;
                    if mode == SearchMode::First {
                        outcome.triples.push(min_order_roles(triple));
                        break 'outer;
                    }
                    // Record each unordered family once, at its occurrence
                    // in the min-ordering convention.
                    if k == 0 || (s_set[0] < t_set[0] && t_set[0] < u_set[0]) {
                        outcome.triples.push(triple);
                    }
                }
            }
        }
    }

    outcome.stats.elapsed = start.elapsed();
    Ok(outcome)
}

/// Runs baseline shards on worker threads and merges outcomes in shard
/// order, mirroring the parallelism contract of the marked-vector search.
pub fn baseline_sharded(
    g: &Group,
    m: usize,
    mode: SearchMode,
    test: TppTestKind,
    shards: &[SearchShard],
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    let jobs = jobs.max(1);
    if jobs == 1 || shards.len() <= 1 {
        let mut merged = SearchOutcome::default();
        for shard in shards {
            let out = baseline_search_shard(g, m, mode, test, Some(*shard))?;
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
                let out = baseline_search_shard(g, m, mode, test, Some(shards[i]));
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

/// Sorts the three sets of a triple into the `min(S) < min(T) < min(U)`
/// convention (sets of a TPP triple stay a TPP triple under any role
/// permutation).
fn min_order_roles(triple: TppTriple) -> TppTriple {
    let mut sets = [triple.s, triple.t, triple.u];
    sets.sort_by_key(|set| set.iter().copied().find(|&x| x != 0).unwrap_or(0));
    let [s, t, u] = sets;
    TppTriple { order: triple.order, s, t, u }
}

/// Lexicographic index combinations of `0..len` taken `k` at a time.
struct Combinations {
    idx: Vec<usize>,
    len: usize,
    k: usize,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(len: usize, k: usize) -> Self {
        Combinations { idx: (0..k).collect(), len, k, started: false, done: k > len }
    }

    /// Starts the enumeration at an explicit combination.
    fn starting_at(len: usize, idx: &[usize]) -> Self {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(idx.last().is_none_or(|&last| last < len));
        Combinations { idx: idx.to_vec(), len, k: idx.len(), started: false, done: idx.len() > len }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        if self.k == 0 {
            self.done = true;
            return None;
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.idx[i] < self.len - (self.k - i) {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
    }
}
