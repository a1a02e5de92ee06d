//! First-row counting, lexicographic ranking/unranking of row supports, and
//! shard construction.
//!
//! The first row of a candidate is an ascending `(m-1)`-subset of the
//! positions `1..order`, enumerated in lexicographic order. Ranks index that
//! enumeration, which is what lets shards seek directly to their start row.

use super::SearchError;
use serde::{Deserialize, Serialize};

/// Rank type for row enumerations. `u128` comfortably covers every feasible
/// search size (the size gate keeps `m-1 <= 10` at the order cap).
pub type Rank = u128;

/// Binomial coefficient as a [`Rank`]; zero when `k > n`.
///
/// Panics on overflow, which cannot happen for any feasible search size.
pub fn binomial(n: usize, k: usize) -> Rank {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: Rank = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as Rank)
            .expect("binomial overflows u128")
            / i as Rank;
    }
    acc
}

/// Number of possible first rows: `C(order-1, m-1)` ascending supports over
/// the non-identity positions. For `m = 5` this equals the quartic
/// `(x^4 - 6x^3 + 11x^2 - 6x)/24` evaluated at `x = order-1`.
pub fn first_row_count(order: usize, m: usize) -> Rank {
    debug_assert!(m >= 1);
    binomial(order - 1, m - 1)
}

/// A consecutive range of first-row ranks assigned to one worker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchShard {
    pub start_row: Rank,
    pub row_count: Rank,
}

impl SearchShard {
    pub fn end(&self) -> Rank {
        self.start_row + self.row_count
    }
}

/// Partition `[0, first_row_count)` into consecutive shards of `shard_size`
/// rows; the last shard may be short.
pub fn make_shards(order: usize, m: usize, shard_size: u64) -> Result<Vec<SearchShard>, SearchError> {
    if shard_size == 0 {
        return Err(SearchError::InvalidShardSize);
    }
    let total = first_row_count(order, m);
    let size = shard_size as Rank;
    let mut shards = Vec::new();
    let mut start: Rank = 0;
    while start < total {
        let count = size.min(total - start);
        shards.push(SearchShard { start_row: start, row_count: count });
        start += count;
    }
    Ok(shards)
}

/// Ascending `(m-1)`-subset of positions `1..order` at `rank` in
/// lexicographic order. Rank 0 is `{1, 2, ..., m-1}`.
pub fn rank_to_first_row(order: usize, m: usize, rank: Rank) -> Result<Vec<usize>, SearchError> {
    let n = order - 1;
    let k = m - 1;
    let total = binomial(n, k);
    if rank >= total {
        return Err(SearchError::RankOutOfRange { rank, total });
    }
    let mut rank = rank;
    let mut out = Vec::with_capacity(k);
    let mut c = 0usize; // zero-based candidate position
    for i in 0..k {
        loop {
            let with_c = binomial(n - c - 1, k - i - 1);
            if with_c <= rank {
                rank -= with_c;
                c += 1;
            } else {
                out.push(c + 1); // positions are 1-based
                c += 1;
                break;
            }
        }
    }
    Ok(out)
}

/// Inverse of [`rank_to_first_row`].
pub fn first_row_to_rank(order: usize, m: usize, positions: &[usize]) -> Result<Rank, SearchError> {
    let n = order - 1;
    let k = m - 1;
    if positions.len() != k
        || positions.windows(2).any(|w| w[0] >= w[1])
        || positions.iter().any(|&p| p == 0 || p > n)
    {
        return Err(SearchError::InvalidFirstRow);
    }
    let mut rank: Rank = 0;
    let mut prev = 0usize; // zero-based exclusive lower bound
    for (i, &p) in positions.iter().enumerate() {
        let z = p - 1; // zero-based position
        for j in prev..z {
            rank += binomial(n - j - 1, k - i - 1);
        }
        prev = z + 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(47, 4), 178_365);
    }

    #[test]
    fn first_row_count_table_values() {
        let expected: [(usize, Rank); 12] = [
            (48, 178_365),
            (52, 249_900),
            (54, 292_825),
            (55, 316_251),
            (56, 341_055),
            (57, 367_290),
            (60, 455_126),
            (63, 557_845),
            (72, 971_635),
            (78, 1_353_275),
            (80, 1_502_501),
            (88, 2_225_895),
        ];
        for (order, count) in expected {
            assert_eq!(first_row_count(order, 5), count, "order {order}");
        }
        assert_eq!(first_row_count(6, 2), 5);
    }

    #[test]
    fn shard_plans() {
        let shards = make_shards(48, 5, 10_000).unwrap();
        assert_eq!(shards.len(), 18);
        assert!(shards[..17].iter().all(|s| s.row_count == 10_000));
        assert_eq!(shards[17].row_count, 8_365);
        let total: Rank = shards.iter().map(|s| s.row_count).sum();
        assert_eq!(total, 178_365);
        // Consecutive and non-overlapping.
        for w in shards.windows(2) {
            assert_eq!(w[0].end(), w[1].start_row);
        }

        let one = make_shards(6, 2, 10).unwrap();
        assert_eq!(one, vec![SearchShard { start_row: 0, row_count: 5 }]);

        assert_eq!(make_shards(6, 2, 0).unwrap_err(), SearchError::InvalidShardSize);
    }

    #[test]
    fn rank_endpoints() {
        assert_eq!(rank_to_first_row(48, 5, 0).unwrap(), vec![1, 2, 3, 4]);
        let last = first_row_count(48, 5) - 1;
        assert_eq!(rank_to_first_row(48, 5, last).unwrap(), vec![44, 45, 46, 47]);
        assert!(matches!(
            rank_to_first_row(48, 5, first_row_count(48, 5)),
            Err(SearchError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn rank_order_is_lexicographic() {
        let mut prev: Option<Vec<usize>> = None;
        for r in 0..first_row_count(9, 3) {
            let row = rank_to_first_row(9, 3, r).unwrap();
            if let Some(p) = prev {
                assert!(p < row);
            }
            assert_eq!(first_row_to_rank(9, 3, &row).unwrap(), r);
            prev = Some(row);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn rank_roundtrip(order in 6usize..90, m in 2usize..6, seed in any::<u64>()) {
            prop_assume!(order > m);
            let total = first_row_count(order, m);
            let rank = (seed as Rank) % total;
            let row = rank_to_first_row(order, m, rank).unwrap();
            prop_assert_eq!(row.len(), m - 1);
            prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(first_row_to_rank(order, m, &row).unwrap(), rank);
        }
    }
}
