//! Direct and semidirect products.

use super::{Group, GroupError};
use crate::bitset::MAX_ORDER;

/// Semidirect product `N ⋊ H` where `action[h]` is the permutation of `N`'s
/// element indices by which `h` acts. The action must send each `h` to an
/// automorphism of `N` and must itself be a homomorphism,
/// `action[h1·h2] = action[h1] ∘ action[h2]`.
///
/// Elements are pairs `(x, h)` at index `x·|H| + h`, multiplying as
/// `(x1, h1)·(x2, h2) = (x1 · action[h1](x2), h1·h2)`.
pub fn semidirect_product(
    n_grp: &Group,
    h_grp: &Group,
    action: &[Vec<usize>],
) -> Result<Group, GroupError> {
    let n = n_grp.order();
    let h = h_grp.order();
    let order = n
        .checked_mul(h)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or(GroupError::SizeCapExceeded { requested: n.saturating_mul(h), cap: MAX_ORDER })?;
    if action.len() != h {
        return Err(GroupError::InvalidParameter("action must have one permutation per H element"));
    }

    for (j, phi) in action.iter().enumerate() {
        if phi.len() != n || !is_permutation(phi, n) {
            return Err(GroupError::ActionNotAutomorphism { h: j });
        }
        for x in 0..n {
            for y in 0..n {
                if phi[n_grp.mul(x, y)] != n_grp.mul(phi[x], phi[y]) {
                    return Err(GroupError::ActionNotAutomorphism { h: j });
                }
            }
        }
    }
    for j1 in 0..h {
        for j2 in 0..h {
            let composed = &action[h_grp.mul(j1, j2)];
            for x in 0..n {
                if composed[x] != action[j1][action[j2][x]] {
                    return Err(GroupError::ActionNotHomomorphism { h1: j1, h2: j2 });
                }
            }
        }
    }

    let idx = |x: usize, j: usize| x * h + j;
    let mut table = vec![vec![0usize; order]; order];
    for x1 in 0..n {
        for j1 in 0..h {
            for x2 in 0..n {
                for j2 in 0..h {
                    let x = n_grp.mul(x1, action[j1][x2]);
                    table[idx(x1, j1)][idx(x2, j2)] = idx(x, h_grp.mul(j1, j2));
                }
            }
        }
    }
    let mut g = Group::from_cayley_table(&table)?;
    let mut labels = Vec::with_capacity(order);
    for x in 0..n {
        for j in 0..h {
            labels.push(format!("({},{})", n_grp.label(x), h_grp.label(j)));
        }
    }
    g.set_labels(labels)?;
    Ok(g)
}

/// Direct product: the semidirect product with the trivial action.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group, GroupError> {
    let trivial: Vec<Vec<usize>> = (0..b.order()).map(|_| (0..a.order()).collect()).collect();
    semidirect_product(a, b, &trivial)
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
