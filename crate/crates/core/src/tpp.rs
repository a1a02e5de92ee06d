//! Triple product property: right quotients, the definition-based and
//! quotient-based tests, triple normalization, and size feasibility.
//!
//! Subsets of a group are kept both as sorted index lists (in [`TppTriple`])
//! and as bitsets during testing; the test inner loops are dominated by
//! membership checks.

use crate::bitset::ElemSet;
use crate::group::Group;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TppError {
    #[error("subset must be non-empty")]
    EmptySet,
    #[error("triple is not basic: identity must lie in S, T and U")]
    NotBasicTriple,
    #[error("size cap exceeded: order {order}, cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("triple belongs to a group of order {expected}, got {actual}")]
    GroupMismatch { expected: usize, actual: usize },
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
}

/// Three subsets `(S, T, U)` of one group, stored as sorted index lists.
/// Serializes to `{"order": n, "s": [...], "t": [...], "u": [...]}` with
/// zero-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TppTriple {
    pub order: usize,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub u: Vec<usize>,
}

impl TppTriple {
    pub fn new(
        order: usize,
        s: Vec<usize>,
        t: Vec<usize>,
        u: Vec<usize>,
    ) -> Result<Self, TppError> {
        let mut triple = TppTriple { order, s, t, u };
        for set in [&mut triple.s, &mut triple.t, &mut triple.u] {
            if set.is_empty() {
                return Err(TppError::EmptySet);
            }
            set.sort_unstable();
            set.dedup();
            if let Some(&max) = set.last() {
                if max >= order {
                    return Err(TppError::IndexOutOfRange { index: max, order });
                }
            }
        }
        Ok(triple)
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.s.len(), self.t.len(), self.u.len())
    }

    pub fn size(&self) -> u64 {
        self.s.len() as u64 * self.t.len() as u64 * self.u.len() as u64
    }

    pub fn is_basic(&self) -> bool {
        self.s[0] == 0 && self.t[0] == 0 && self.u[0] == 0
    }

    fn check_group(&self, g: &Group) -> Result<(), TppError> {
        if g.order() != self.order {
            return Err(TppError::GroupMismatch { expected: self.order, actual: g.order() });
        }
        Ok(())
    }
}

/// Right quotient of a subset: always contains the identity and is closed
/// under inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSet {
    order: usize,
    elems: ElemSet,
}

impl QuotientSet {
    pub fn contains(&self, g: usize) -> bool {
        self.elems.contains(g)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the identity
    }

    pub fn elems(&self) -> &ElemSet {
        &self.elems
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elems.to_vec()
    }
}

pub(crate) fn quotient_elems(g: &Group, xs: &[usize]) -> ElemSet {
    let mut q = ElemSet::EMPTY;
    for &x in xs {
        for &y in xs {
            q.insert(g.mul(x, g.inv(y)));
        }
    }
    q
}

/// Quotient of `{1} ∪ support` computed without materializing the set:
/// `{1} ∪ A ∪ A^-1 ∪ {a·b^-1}`.
pub(crate) fn quotient_from_support(g: &Group, support: &[usize]) -> ElemSet {
    let mut q = ElemSet::singleton(0);
    for &a in support {
        q.insert(a);
        q.insert(g.inv(a));
        for &b in support {
            q.insert(g.mul(a, g.inv(b)));
        }
    }
    q
}

/// TPP check over precomputed quotient sets. Quotient sets are closed under
/// inversion, so a nontrivial product `s·t·u = 1` with all factors nontrivial
/// is equivalent to `t·u` landing in `Q(S)\{1}`; the degenerate cases where
/// one factor is the identity reduce to the pairwise intersections.
pub(crate) fn tpp_test_from_quotients(g: &Group, qs: &ElemSet, qt: &ElemSet, qu: &ElemSet) -> bool {
    if !qs.meets_only_identity(qt)
        || !qs.meets_only_identity(qu)
        || !qt.meets_only_identity(qu)
    {
        return false;
    }
    for t in qt.iter() {
        if t == 0 {
            continue;
        }
        for u in qu.iter() {
            if u == 0 {
                continue;
            }
            let p = g.mul(t, u);
            debug_assert_ne!(p, 0, "t = u^-1 would violate the pairwise check");
            if qs.contains(p) {
                return false;
            }
        }
    }
    true
}

/// The set `Q(X) = {x·y^-1 : x, y ∈ X}`.
pub fn right_quotient(g: &Group, xs: &[usize]) -> Result<QuotientSet, TppError> {
    if xs.is_empty() {
        return Err(TppError::EmptySet);
    }
    if let Some(&bad) = xs.iter().find(|&&x| x >= g.order()) {
        return Err(TppError::IndexOutOfRange { index: bad, order: g.order() });
    }
    Ok(QuotientSet { order: g.order(), elems: quotient_elems(g, xs) })
}

/// Ground-truth TPP test straight from the definition: a literal cubic scan
/// of `Q(S) × Q(T) × Q(U)` looking for a nontrivial product `s·t·u = 1`.
pub fn tpp_test_definition(g: &Group, triple: &TppTriple) -> Result<bool, TppError> {
    triple.check_group(g)?;
    let qs = quotient_elems(g, &triple.s);
    let qt = quotient_elems(g, &triple.t);
    let qu = quotient_elems(g, &triple.u);
    for s in qs.iter() {
        for t in qt.iter() {
            let st = g.mul(s, t);
            for u in qu.iter() {
                if g.mul(st, u) == 0 && !(s == 0 && t == 0 && u == 0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Quotient-based TPP test: equivalent to demanding, for every permutation
/// `(π1, π2, π3)` of the three quotient sets, `Q(π2) ∩ Q(π3) = {1}` and
/// `Q(π1) ∩ Q(π2)·Q(π3) = {1}`. The product set is scanned on the fly rather
/// than materialized, and the scan short-circuits on the first violation
/// (one scan suffices: the six permuted conditions coincide because quotient
/// sets are inverse-closed). Requires a basic triple.
///
/// Agrees with [`tpp_test_definition`] on every basic input.
pub fn tpp_test_quotient(g: &Group, triple: &TppTriple) -> Result<bool, TppError> {
    triple.check_group(g)?;
    if !triple.is_basic() {
        return Err(TppError::NotBasicTriple);
    }
    let qs = quotient_elems(g, &triple.s);
    let qt = quotient_elems(g, &triple.t);
    let qu = quotient_elems(g, &triple.u);
    Ok(tpp_test_from_quotients(g, &qs, &qt, &qu))
}

/// Right-translates each set so it contains the identity: `S` is translated
/// by the inverse of its least element, likewise `T` and `U`. Preserves set
/// sizes and the TPP outcome.
pub fn normalize_basic(g: &Group, triple: &TppTriple) -> Result<TppTriple, TppError> {
    triple.check_group(g)?;
    let translate = |set: &[usize]| -> Vec<usize> {
        let a = g.inv(set[0]); // sets are sorted, so set[0] is minimal
        set.iter().map(|&x| g.mul(x, a)).collect()
    };
    TppTriple::new(
        triple.order,
        translate(&triple.s),
        translate(&triple.t),
        translate(&triple.u),
    )
}

/// Size feasibility: `|S|(|T|+|U|-1) <= |G|` and its two role rotations.
pub fn neumann_feasible(n_s: usize, n_t: usize, n_u: usize, order: usize) -> bool {
    n_s * (n_t + n_u - 1) <= order
        && n_t * (n_s + n_u - 1) <= order
        && n_u * (n_s + n_t - 1) <= order
}

pub const CAPACITY_ORDER_CAP: usize = 16;

/// Largest `|S|·|T|·|U|` over all subset triples passing the TPP test, by
/// exhaustive search over basic triples (every triple translates to a basic
/// one of the same shape). Exponential; hard-capped at order 16.
pub fn tpp_capacity_bruteforce(g: &Group) -> Result<u64, TppError> {
    let n = g.order();
    if n > CAPACITY_ORDER_CAP {
        return Err(TppError::SizeCapExceeded { order: n, cap: CAPACITY_ORDER_CAP });
    }
    let full: u32 = (1u32 << n) - 1;
    let quotient_mask = |xs: u32| -> u32 {
        let mut q = 0u32;
        let mut a = xs;
        while a != 0 {
            let x = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = xs;
            while b != 0 {
                let y = b.trailing_zeros() as usize;
                b &= b - 1;
                q |= 1 << g.mul(x, g.inv(y));
            }
        }
        q
    };
    // Nontrivial products s·t·u = 1 searched over quotient masks.
    let passes = |qs: u32, qt: u32, qu: u32| -> bool {
        let mut a = qs;
        while a != 0 {
            let s = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = qt;
            while b != 0 {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                let u = g.inv(g.mul(s, t));
                if qu & (1 << u) != 0 && !(s == 0 && t == 0 && u == 0) {
                    return false;
                }
            }
        }
        true
    };

    let mut best: u64 = 1; // ({1},{1},{1}) always passes
    let subsets_of = |allowed: u32| {
        // All basic subsets of `allowed | 1`, largest first is not needed;
        // plain submask enumeration with bit 0 forced.
        let pool = allowed & !1;
        let mut sub = pool;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = sub | 1;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & pool;
            }
            Some(current)
        })
    };

    for s_mask in subsets_of(full) {
        let s_size = s_mask.count_ones() as u64;
        let qs = quotient_mask(s_mask);
        let t_allowed = full & !(qs & !1);
        for t_mask in subsets_of(t_allowed) {
            let t_size = t_mask.count_ones() as u64;
            let qt = quotient_mask(t_mask);
            if (qs & qt) != 1 {
                continue;
            }
            let u_allowed = full & !((qs | qt) & !1);
            if s_size * t_size * u_allowed.count_ones() as u64 <= best {
                continue;
            }
            for u_mask in subsets_of(u_allowed) {
                let npm = s_size * t_size * u_mask.count_ones() as u64;
                if npm <= best {
                    continue;
                }
                let qu = quotient_mask(u_mask);
                if passes(qs, qt, qu) {
                    best = npm;
                }
            }
        }
    }
    Ok(best)
}
