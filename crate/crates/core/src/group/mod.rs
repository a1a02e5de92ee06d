//! Finite groups represented as validated Cayley tables.
//!
//! A [`Group`] stores the full multiplication table with the identity pinned
//! at index 0 and an element order that is frozen at construction time.
//! Search behaviour (and candidate counts) depend on that order, so nothing
//! here ever re-sorts elements.

mod families;
mod io;
mod product;
mod subgroup;

pub use families::{alternating, cyclic, dicyclic, dihedral, symmetric};
pub(crate) use families::permutation_elements;
pub use io::{read_table_file, parse_table_str, write_table_file, table_file_string};
pub use product::{direct_product, semidirect_product};
pub use subgroup::{
    has_abelian_index2_subgroup, index2_subgroups, subgroup_closure, Subgroup,
};

use crate::bitset::MAX_ORDER;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is empty")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NonSquareTable { row: usize, len: usize, expected: usize },
    #[error("entry out of range at row {row}, column {col}: {value} (order {order})")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not a Latin square: duplicate value {value} at row {row}, column {col}")]
    NotLatinSquare { row: usize, col: usize, value: usize },
    #[error("not associative: (g{a}*g{b})*g{c} != g{a}*(g{b}*g{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("size cap exceeded: requested order {requested}, cap {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("action of element {h} is not an automorphism")]
    ActionNotAutomorphism { h: usize },
    #[error("action is not a homomorphism at ({h1}, {h2})")]
    ActionNotHomomorphism { h1: usize, h2: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

/// A finite group of order at most [`MAX_ORDER`], as a validated Cayley table.
///
/// Invariants established at construction:
/// * index 0 is the two-sided identity,
/// * every row and column of the table is a permutation of `0..order`,
/// * the table is associative,
/// * `mul(g, inv(g)) == 0` for all `g`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    order: usize,
    cayley: Vec<u8>,
    inverse: Vec<u8>,
    labels: Option<Vec<String>>,
}

impl Group {
    /// Builds a group from a raw multiplication table of element indices.
    ///
    /// The identity need not sit at index 0 in the input; if it is found
    /// elsewhere the indexing is conjugated by the swap that moves it there.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Group, GroupError> {
        Self::from_cayley_table_mapped(table).map(|(g, _)| g)
    }

    /// Like [`Group::from_cayley_table`] but also returns the map from input
    /// indices to final indices (used to carry labels across relocation).
    pub fn from_cayley_table_mapped(
        table: &[Vec<usize>],
    ) -> Result<(Group, Vec<usize>), GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(GroupError::SizeCapExceeded { requested: n, cap: MAX_ORDER });
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NonSquareTable { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v, order: n });
                }
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|h| table[e][h] == h) && (0..n).all(|g| table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;

        // Relabel by swapping index 0 with the identity's index.
        let map: Vec<usize> = (0..n)
            .map(|i| {
                if i == identity {
                    0
                } else if i == 0 {
                    identity
                } else {
                    i
                }
            })
            .collect();

        let mut cayley = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cayley[map[a] * n + map[b]] = map[table[a][b]] as u8;
            }
        }

        let group = Self::validate_table(n, cayley)?;
        Ok((group, map))
    }

    fn validate_table(n: usize, cayley: Vec<u8>) -> Result<Group, GroupError> {
        // Latin square, scanning rows then columns for the first duplicate.
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let v = cayley[r * n + c] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { row: r, col: c, value: v });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let v = cayley[r * n + c] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { row: r, col: c, value: v });
                }
                seen[v] = true;
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a * n + b] as usize;
                for c in 0..n {
                    let bc = cayley[b * n + c] as usize;
                    if cayley[ab * n + c] != cayley[a * n + bc] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut inverse = vec![0u8; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&x| cayley[g * n + x] == 0)
                .expect("Latin row contains identity");
            debug_assert_eq!(cayley[inv * n + g], 0, "one-sided inverse in a group");
            inverse[g] = inv as u8;
        }

        Ok(Group { order: n, cayley, inverse, labels: None })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    /// Conjugate of `g` by `x`, that is `x * g * x^-1`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut acc = g;
        while acc != 0 {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Partition of the element indices into conjugation orbits, ordered by
    /// their minimal member; the identity class `[0]` comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class = Vec::new();
            for x in 0..n {
                let c = self.conj(x, g);
                if !seen[c] {
                    seen[c] = true;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Number of conjugacy classes, which equals the number of irreducible
    /// complex characters.
    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::InvalidParameter("label count must equal order"));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Display name for one element; falls back to `g<idx>`.
    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => {
                if g == 0 {
                    "e".to_string()
                } else {
                    format!("g{g}")
                }
            }
        }
    }

    /// FNV-1a hash of the Cayley table bytes, as a fixed-width hex string.
    /// Reports carry this so results cannot be attributed to the wrong table.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |b: u8| {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(self.order as u8);
        for &b in &self.cayley {
            eat(b);
        }
        format!("{h:016x}")
    }

    /// Find an element index by predicate on its label (when labels exist).
    pub fn find_by_label(&self, name: &str) -> Option<usize> {
        self.labels
            .as_ref()
            .and_then(|l| l.iter().position(|x| x == name))
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group(order={}, fp={})", self.order, self.fingerprint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = Group::from_cayley_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
        assert!(g.is_abelian());
        assert_eq!(g.class_count(), 1);
    }

    #[test]
    fn rejects_non_latin() {
        let err = Group::from_cayley_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NotLatinSquare { row: 1, col: 1, value: 1 });
    }

    #[test]
    fn rejects_no_identity() {
        // A Latin square where no row/column pair acts as a two-sided identity.
        let err =
            Group::from_cayley_table(&[vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
    }

    #[test]
    fn rejects_non_associative() {
        // Order-5 Latin square with identity that fails associativity
        // (quasigroup from a non-associative loop).
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match Group::from_cayley_table(&table) {
            Err(GroupError::NotAssociative { .. }) => {}
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn relocates_identity() {
        // C3 written with the identity at index 2.
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = Group::from_cayley_table(&table).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 0), 1);
        assert_eq!(g.mul(1, g.inv(1)), 0);
    }

    #[test]
    fn rejects_out_of_range() {
        let err = Group::from_cayley_table(&[vec![0, 1], vec![1, 2]]).unwrap_err();
        assert_eq!(err, GroupError::EntryOutOfRange { row: 1, col: 1, value: 2, order: 2 });
    }
}
