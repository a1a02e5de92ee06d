//! Subgroups: closures, index-2 enumeration, and restriction to standalone
//! groups.
//!
//! Index-2 subgroups are found as kernels of the surjections onto the
//! two-element group: the quotient of `G` by the closure of all commutators
//! and squares is an elementary abelian 2-group, and the index-2 subgroups
//! of `G` are exactly the preimages of its hyperplanes. This is complete and
//! much cheaper than generic subgroup enumeration.

use super::{Group, GroupError};

/// A subgroup given by its sorted element indices in the parent group.
/// Always contains 0 and is closed under the parent's product and inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_abelian_in(&self, parent: &Group) -> bool {
        self.elements.iter().all(|&a| {
            self.elements.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a))
        })
    }

    /// Reindexes the subgroup as a standalone [`Group`] (element `k` of the
    /// result is `self.elements()[k]`; the identity stays at 0 because the
    /// element list is sorted).
    pub fn to_group(&self, parent: &Group) -> Result<Group, GroupError> {
        let pos: std::collections::HashMap<usize, usize> =
            self.elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos[&parent.mul(a, b)]).collect())
            .collect();
        let mut g = Group::from_cayley_table(&table)?;
        if parent.labels().is_some() {
            g.set_labels(self.elements.iter().map(|&e| parent.label(e)).collect())?;
        }
        Ok(g)
    }
}

/// Smallest subgroup of `g` containing `generators`.
pub fn subgroup_closure(g: &Group, generators: &[usize]) -> Subgroup {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut queue: Vec<usize> = vec![0];
    for &x in generators {
        if !member[x] {
            member[x] = true;
            queue.push(x);
        }
    }
    // Products of members with generators reach everything; inverses come for
    // free in a finite group.
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        i += 1;
        for &x in generators {
            for p in [g.mul(a, x), g.mul(x, a)] {
                if !member[p] {
                    member[p] = true;
                    queue.push(p);
                }
            }
        }
    }
    let elements: Vec<usize> = (0..g.order()).filter(|&e| member[e]).collect();
    Subgroup { elements }
}

/// All subgroups of index 2, in a deterministic order.
pub fn index2_subgroups(g: &Group) -> Vec<Subgroup> {
    let n = g.order();
    // Closure of all commutators and squares.
    let mut gens: Vec<usize> = Vec::new();
    for a in 0..n {
        gens.push(g.mul(a, a));
        for b in a + 1..n {
            let comm = g.mul(g.mul(a, b), g.inv(g.mul(b, a)));
            gens.push(comm);
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let kernel = subgroup_closure(g, &gens);
    let k = kernel.order();
    if k == n {
        return Vec::new();
    }
    let q = n / k;
    debug_assert!(q.is_power_of_two(), "quotient by squares+commutators has exponent 2");

    // Assign each element to a coset of the kernel.
    let mut coset_of = vec![usize::MAX; n];
    let mut coset_reps: Vec<usize> = Vec::new();
    for e in 0..n {
        if coset_of[e] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        coset_reps.push(e);
        for &x in kernel.elements() {
            coset_of[g.mul(e, x)] = id;
        }
    }
    debug_assert_eq!(coset_reps.len(), q);
    let qmul = |a: usize, b: usize| coset_of[g.mul(coset_reps[a], coset_reps[b])];

    // F2 coordinates for the quotient's elements.
    let mut coords = vec![0u32; q];
    let mut visited = vec![false; q];
    visited[0] = true;
    let mut basis_bits = 0;
    for c in 1..q {
        if visited[c] {
            continue;
        }
        let snapshot: Vec<usize> = (0..q).filter(|&v| visited[v]).collect();
        for v in snapshot {
            let w = qmul(v, c);
            visited[w] = true;
            coords[w] = coords[v] | (1 << basis_bits);
        }
        basis_bits += 1;
    }
    debug_assert_eq!(1usize << basis_bits, q);

    // One subgroup per nonzero functional on the quotient.
    let mut out = Vec::new();
    for alpha in 1u32..(1 << basis_bits) {
        let elements: Vec<usize> = (0..n)
            .filter(|&e| (coords[coset_of[e]] & alpha).count_ones().is_multiple_of(2))
            .collect();
        debug_assert_eq!(elements.len(), n / 2);
        out.push(Subgroup { elements });
    }
    out
}

/// Whether some index-2 subgroup is abelian under the restricted table.
pub fn has_abelian_index2_subgroup(g: &Group) -> bool {
    index2_subgroups(g).iter().any(|h| h.is_abelian_in(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, dicyclic, dihedral, symmetric};

    #[test]
    fn closure_examples() {
        let s3 = symmetric(3).unwrap();
        let trivial = subgroup_closure(&s3, &[0]);
        assert_eq!(trivial.elements(), &[0]);

        let three_cycle = s3.find_by_label("(1 2 3)").unwrap();
        let c3 = subgroup_closure(&s3, &[three_cycle]);
        assert_eq!(c3.order(), 3);

        let transposition = s3.find_by_label("(1 2)").unwrap();
        let whole = subgroup_closure(&s3, &[transposition, three_cycle]);
        assert_eq!(whole.order(), 6);
    }

    #[test]
    fn d16_index2() {
        let d16 = dihedral(8).unwrap();
        let subs = index2_subgroups(&d16);
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|h| h.order() == 8));
        assert!(subs.iter().any(|h| h.is_abelian_in(&d16)));
        assert!(has_abelian_index2_subgroup(&d16));
        // Each is closed and contains the identity.
        for h in &subs {
            assert!(h.contains(0));
            for &a in h.elements() {
                for &b in h.elements() {
                    assert!(h.contains(d16.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn no_index2_in_simple_or_odd() {
        assert!(index2_subgroups(&alternating(5).unwrap()).is_empty());
        assert!(!has_abelian_index2_subgroup(&alternating(5).unwrap()));
        assert!(index2_subgroups(&cyclic(7).unwrap()).is_empty());
    }

    #[test]
    fn q16_has_abelian_index2() {
        assert!(has_abelian_index2_subgroup(&dicyclic(4).unwrap()));
    }

    #[test]
    fn subgroup_to_group_roundtrip() {
        let d16 = dihedral(8).unwrap();
        for h in index2_subgroups(&d16) {
            let g = h.to_group(&d16).unwrap();
            assert_eq!(g.order(), 8);
        }
    }

    #[test]
    fn lagrange_on_closures() {
        let s4 = symmetric(4).unwrap();
        for gen in 1..s4.order() {
            let h = subgroup_closure(&s4, &[gen]);
            assert_eq!(s4.order() % h.order(), 0);
        }
    }
}
