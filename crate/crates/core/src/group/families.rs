//! Standard group families: cyclic, dihedral, dicyclic, symmetric, alternating.
//!
//! Every constructor routes through `Group::from_cayley_table`, so the full
//! validator runs on each table. Element 0 is always the identity and the
//! element order is the frozen, documented one for each family.

use super::{Group, GroupError};
use crate::bitset::MAX_ORDER;
use std::collections::HashMap;

fn check_order_cap(order: usize) -> Result<(), GroupError> {
    if order > MAX_ORDER {
        return Err(GroupError::SizeCapExceeded { requested: order, cap: MAX_ORDER });
    }
    Ok(())
}

/// Cyclic group of order `n`, elements `g^k` at index `k`.
pub fn cyclic(n: usize) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic requires n >= 1"));
    }
    check_order_cap(n)?;
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let mut g = Group::from_cayley_table(&table)?;
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".into(),
            1 => "g".into(),
            _ => format!("g{k}"),
        })
        .collect();
    g.set_labels(labels)?;
    Ok(g)
}

/// Dihedral group of order `2n`: rotations `r^k` at indices `0..n`,
/// reflections `s·r^k` at indices `n..2n`.
pub fn dihedral(n: usize) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("dihedral requires n >= 1"));
    }
    check_order_cap(2 * n)?;
    // s^e1 r^k1 * s^e2 r^k2 = s^(e1+e2) r^((-1)^e2 k1 + k2)
    let idx = |eps: usize, k: usize| eps * n + k;
    let mut table = vec![vec![0usize; 2 * n]; 2 * n];
    for e1 in 0..2 {
        for k1 in 0..n {
            for e2 in 0..2 {
                for k2 in 0..n {
                    let k = if e2 == 1 { ((n - k1) % n + k2) % n } else { (k1 + k2) % n };
                    table[idx(e1, k1)][idx(e2, k2)] = idx((e1 + e2) % 2, k);
                }
            }
        }
    }
    let mut g = Group::from_cayley_table(&table)?;
    let mut labels = Vec::with_capacity(2 * n);
    for k in 0..n {
        labels.push(match k {
            0 => "e".into(),
            1 => "r".into(),
            _ => format!("r{k}"),
        });
    }
    for k in 0..n {
        labels.push(match k {
            0 => "s".into(),
            1 => "sr".into(),
            _ => format!("sr{k}"),
        });
    }
    g.set_labels(labels)?;
    Ok(g)
}

/// Dicyclic group of order `4n` (`n >= 2`): `a^k` at indices `0..2n`,
/// `a^k·b` at indices `2n..4n`, with `b^2 = a^n` and `b a b^-1 = a^-1`.
/// `dicyclic(2)` is the quaternion group Q8, `dicyclic(4)` is Q16.
pub fn dicyclic(n: usize) -> Result<Group, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidParameter("dicyclic requires n >= 2"));
    }
    check_order_cap(4 * n)?;
    let m = 2 * n;
    let mut table = vec![vec![0usize; 4 * n]; 4 * n];
    for k1 in 0..m {
        for k2 in 0..m {
            table[k1][k2] = (k1 + k2) % m; // a^k1 * a^k2
            table[k1][m + k2] = m + (k1 + k2) % m; // a^k1 * a^k2 b
            table[m + k1][k2] = m + (k1 + m - k2) % m; // a^k1 b * a^k2
            table[m + k1][m + k2] = (k1 + m - k2 + n) % m; // a^k1 b * a^k2 b
        }
    }
    let mut g = Group::from_cayley_table(&table)?;
    let mut labels = Vec::with_capacity(4 * n);
    for k in 0..m {
        labels.push(match k {
            0 => "e".into(),
            1 => "a".into(),
            _ => format!("a{k}"),
        });
    }
    for k in 0..m {
        labels.push(match k {
            0 => "b".into(),
            1 => "ab".into(),
            _ => format!("a{k}b"),
        });
    }
    g.set_labels(labels)?;
    Ok(g)
}

/// All permutations of `0..n` in lexicographic one-line order.
/// The identity is first.
pub(crate) fn permutations_lex(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut used = vec![false; n];
    fn rec(n: usize, depth: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if depth == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current[depth] = v as u8;
                rec(n, depth + 1, current, used, out);
                used[v] = false;
            }
        }
    }
    rec(n, 0, &mut current, &mut used, &mut out);
    out
}

/// Permutations of `0..n` in the same order the group constructors use.
pub(crate) fn permutation_elements(n: usize, even_only: bool) -> Vec<Vec<u8>> {
    let all = permutations_lex(n);
    if even_only {
        all.into_iter().filter(|p| perm_is_even(p)).collect()
    } else {
        all
    }
}

pub(crate) fn perm_is_even(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Cycle notation with 1-based points, e.g. `(1 2)(3 4)`; identity is `e`.
pub(crate) fn cycle_label(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] as usize == i {
            seen[i] = true;
            continue;
        }
        out.push('(');
        let mut j = i;
        let mut first = true;
        while !seen[j] {
            seen[j] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(j + 1).to_string());
            first = false;
            j = p[j] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Builds a group from an explicit list of permutations closed under
/// composition; `mul(p, q)` applies `q` first, then `p`.
pub(crate) fn permutation_group(perms: &[Vec<u8>]) -> Result<Group, GroupError> {
    let index: HashMap<&[u8], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let compose = |p: &[u8], q: &[u8]| -> Vec<u8> { q.iter().map(|&i| p[i as usize]).collect() };
    let mut table = vec![vec![0usize; perms.len()]; perms.len()];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let pq = compose(p, q);
            table[i][j] = *index
                .get(pq.as_slice())
                .ok_or(GroupError::InvalidParameter("permutation set is not closed"))?;
        }
    }
    let mut g = Group::from_cayley_table(&table)?;
    g.set_labels(perms.iter().map(|p| cycle_label(p)).collect())?;
    Ok(g)
}

fn factorial_capped(n: usize) -> Option<usize> {
    let mut f: usize = 1;
    for k in 2..=n {
        f = f.checked_mul(k)?;
        if f > 1 << 20 {
            return None;
        }
    }
    Some(f)
}

/// Symmetric group on `n` points (`n <= 8`), elements in lexicographic
/// one-line order. The order cap of [`MAX_ORDER`] binds first, so in
/// practice `n <= 5`.
pub fn symmetric(n: usize) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("symmetric requires n >= 1"));
    }
    if n > 8 {
        return Err(GroupError::SizeCapExceeded { requested: n, cap: 8 });
    }
    let order = factorial_capped(n).unwrap_or(usize::MAX);
    check_order_cap(order)?;
    permutation_group(&permutations_lex(n))
}

/// Alternating group on `n` points (`n <= 8`), even permutations in
/// lexicographic one-line order. Same order cap as [`symmetric`].
pub fn alternating(n: usize) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("alternating requires n >= 1"));
    }
    if n > 8 {
        return Err(GroupError::SizeCapExceeded { requested: n, cap: 8 });
    }
    let order = factorial_capped(n).map(|f| if n >= 2 { f / 2 } else { f }).unwrap_or(usize::MAX);
    check_order_cap(order)?;
    let perms: Vec<Vec<u8>> =
        permutations_lex(n).into_iter().filter(|p| perm_is_even(p)).collect();
    permutation_group(&perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(dihedral(8).unwrap().order(), 16);
        assert_eq!(dicyclic(2).unwrap().order(), 8);
        assert_eq!(dicyclic(4).unwrap().order(), 16);
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
    }

    #[test]
    fn caps_and_parameters() {
        assert!(matches!(symmetric(6), Err(GroupError::SizeCapExceeded { .. })));
        assert!(matches!(symmetric(9), Err(GroupError::SizeCapExceeded { .. })));
        assert!(matches!(alternating(6), Err(GroupError::SizeCapExceeded { .. })));
        assert!(matches!(dicyclic(1), Err(GroupError::InvalidParameter(_))));
        assert!(matches!(cyclic(0), Err(GroupError::InvalidParameter(_))));
        assert!(matches!(cyclic(256), Err(GroupError::SizeCapExceeded { .. })));
    }

    #[test]
    fn abelian_flags() {
        assert!(cyclic(12).unwrap().is_abelian());
        assert!(!dihedral(3).unwrap().is_abelian());
        assert!(cyclic(1).unwrap().is_abelian());
    }

    #[test]
    fn s3_has_three_involutions() {
        let s3 = symmetric(3).unwrap();
        let involutions = (1..s3.order()).filter(|&g| s3.mul(g, g) == 0).count();
        assert_eq!(involutions, 3);
        assert_eq!(s3.conjugacy_classes().iter().map(|c| c.len()).collect::<Vec<_>>(), vec![1, 3, 2]);
    }

    #[test]
    fn a5_classes() {
        let a5 = alternating(5).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.class_count(), 5);
    }

    #[test]
    fn q16_has_one_involution() {
        let q16 = dicyclic(4).unwrap();
        let involutions = (1..q16.order()).filter(|&g| q16.mul(g, g) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = cyclic(9).unwrap();
        assert_eq!(g.class_count(), 9);
        assert!(g.conjugacy_classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn class_sizes_divide_order_and_sum() {
        for g in [dihedral(6).unwrap(), dicyclic(3).unwrap(), symmetric(4).unwrap()] {
            let classes = g.conjugacy_classes();
            let total: usize = classes.iter().map(|c| c.len()).sum();
            assert_eq!(total, g.order());
            assert!(classes.iter().all(|c| g.order() % c.len() == 0));
        }
    }

    #[test]
    fn cycle_labels() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.label(0), "e");
        assert!(s3.find_by_label("(1 2)").is_some());
        assert!(s3.find_by_label("(1 2 3)").is_some());
    }
}
