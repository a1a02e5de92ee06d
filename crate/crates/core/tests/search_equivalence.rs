//! The two search algorithms must agree exactly: same triple sets, and the
//! marked-vector search never tests more candidates than the baseline.

use tppforge_core::algebra::verify_realization;
use tppforge_core::baseline::{baseline_search, TppTestKind};
use tppforge_core::corpus::small_test_corpus;
use tppforge_core::search::{search_mmm, SearchMode};
use tppforge_core::tpp::{neumann_feasible, tpp_test_definition, TppTriple};

fn sorted(mut triples: Vec<TppTriple>) -> Vec<TppTriple> {
    triples.sort_by(|x, y| (&x.s, &x.t, &x.u).cmp(&(&y.s, &y.t, &y.u)));
    triples
}

#[test]
fn new_search_equals_baseline_on_small_corpus() {
    for (name, g) in small_test_corpus() {
        for m in [2usize, 3] {
            if !neumann_feasible(m, m, m, g.order()) {
                continue;
            }
            let new = search_mmm(&g, m, SearchMode::All, None).unwrap();
            let old = baseline_search(&g, m, SearchMode::All, TppTestKind::Quotient).unwrap();
            assert_eq!(
                sorted(new.triples.clone()),
                sorted(old.triples.clone()),
                "triple sets differ on {name} at m={m}"
            );
            assert!(
                new.stats.candidates_tested <= old.stats.candidates_tested,
                "{name} m={m}: new search tested more candidates than the baseline"
            );
            assert_eq!(new.stats.triples_found as usize, new.triples.len());
        }
    }
}

#[test]
fn found_triples_satisfy_all_invariants() {
    for (name, g) in small_test_corpus() {
        for m in [2usize, 3] {
            if !neumann_feasible(m, m, m, g.order()) {
                continue;
            }
            let out = search_mmm(&g, m, SearchMode::All, None).unwrap();
            for tr in &out.triples {
                // Ground truth test.
                assert!(tpp_test_definition(&g, tr).unwrap(), "{name}: non-TPP triple returned");
                // Sizes always satisfy the feasibility inequalities.
                let (a, b, c) = tr.shape();
                assert!(neumann_feasible(a, b, c, g.order()));
                // Pairwise intersections are exactly the identity.
                for (x, y) in [(&tr.s, &tr.t), (&tr.s, &tr.u), (&tr.t, &tr.u)] {
                    let shared: Vec<_> = x.iter().filter(|e| y.contains(e)).collect();
                    assert_eq!(shared, vec![&0], "{name}: sets share non-identity elements");
                }
                // Group-algebra soundness: the embedding reproduces every
                // matrix product exactly.
                let v = verify_realization(&g, tr, 25, 0xA5A5).unwrap();
                assert!(v.verified, "{name}: embedding check failed for {tr:?}");
            }
        }
    }
}

#[test]
fn first_mode_agrees_with_all_mode() {
    for (name, g) in small_test_corpus() {
        if !neumann_feasible(2, 2, 2, g.order()) {
            continue;
        }
        let all = search_mmm(&g, 2, SearchMode::All, None).unwrap();
        let first = search_mmm(&g, 2, SearchMode::First, None).unwrap();
        match all.triples.first() {
            Some(expected) => assert_eq!(first.triples, vec![expected.clone()], "{name}"),
            None => assert!(first.triples.is_empty(), "{name}"),
        }
        assert!(first.stats.candidates_tested <= all.stats.candidates_tested);
    }
}
