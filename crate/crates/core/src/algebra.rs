//! Group-algebra oracle: embed integer matrices into the group ring,
//! multiply by convolution, and read the matrix product back off the
//! coefficients of `s^-1·u`.
//!
//! Coefficients are exact integers, so verification is an identity check
//! with no tolerances: for a genuine TPP triple the read-off product equals
//! the direct matrix product for *all* matrices, and any mismatch proves
//! the triple invalid.

use crate::group::Group;
use crate::tpp::TppTriple;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to groups of different order ({left} vs {right})")]
    GroupMismatch { left: usize, right: usize },
    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch { expected_rows: usize, expected_cols: usize, rows: usize, cols: usize },
}

/// Dense integer matrix with exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        debug_assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix { rows: r, cols: c, entries: rows.iter().flatten().copied().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] = v;
    }

    /// Direct cubic matrix product; the independent side of every
    /// verification comparison.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch {
                expected_rows: self.cols,
                expected_cols: other.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn random<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: (0..rows * cols).map(|_| rng.random_range(lo..=hi)).collect(),
        }
    }
}

/// Element of the integral group ring: one exact coefficient per group
/// element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAlgebraElement {
    pub order: usize,
    pub coeffs: Vec<i64>,
}

impl GroupAlgebraElement {
    pub fn zero(order: usize) -> Self {
        GroupAlgebraElement { order, coeffs: vec![0; order] }
    }

    /// The basis element supported on `g`.
    pub fn delta(order: usize, g: usize) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[g] = 1;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_pair(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::GroupMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }
}

fn check_element(g: &Group, x: &GroupAlgebraElement) -> Result<(), AlgebraError> {
    if g.order() != x.order {
        return Err(AlgebraError::GroupMismatch { left: g.order(), right: x.order });
    }
    Ok(())
}

/// Ring product: `(x·y)[k] = Σ_{g·h = k} x[g]·y[h]`. Associative, with
/// `delta(0)` as the identity.
pub fn convolve(
    g: &Group,
    x: &GroupAlgebraElement,
    y: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement, AlgebraError> {
    x.check_pair(y)?;
    check_element(g, x)?;
    let n = g.order();
    let mut out = GroupAlgebraElement::zero(n);
    for a in 0..n {
        let xa = x.coeffs[a];
        if xa == 0 {
            continue;
        }
        for b in 0..n {
            let yb = y.coeffs[b];
            if yb != 0 {
                out.coeffs[g.mul(a, b)] += xa * yb;
            }
        }
    }
    Ok(out)
}

/// Embeds the left factor: entry `A[s_i, t_j]` contributes to the
/// coefficient of `s_i^-1·t_j`. Coefficients accumulate if the map
/// `(s,t) -> s^-1·t` collides; for TPP triples it is injective and no
/// accumulation occurs.
pub fn embed_left(
    g: &Group,
    a: &IntMatrix,
    s: &[usize],
    t: &[usize],
) -> Result<GroupAlgebraElement, AlgebraError> {
    if a.rows != s.len() || a.cols != t.len() {
        return Err(AlgebraError::ShapeMismatch {
            expected_rows: s.len(),
            expected_cols: t.len(),
            rows: a.rows,
            cols: a.cols,
        });
    }
    let mut out = GroupAlgebraElement::zero(g.order());
    for (i, &si) in s.iter().enumerate() {
        let si_inv = g.inv(si);
        for (j, &tj) in t.iter().enumerate() {
            out.coeffs[g.mul(si_inv, tj)] += a.get(i, j);
        }
    }
    Ok(out)
}

/// Embeds the right factor: entry `B[t_j, u_k]` contributes to the
/// coefficient of `t_j^-1·u_k`.
pub fn embed_right(
    g: &Group,
    b: &IntMatrix,
    t: &[usize],
    u: &[usize],
) -> Result<GroupAlgebraElement, AlgebraError> {
    embed_left(g, b, t, u)
}

/// Reads a matrix back out of a ring element: `out[i][k]` is the coefficient
/// of `s_i^-1·u_k`.
pub fn extract_product(
    g: &Group,
    c: &GroupAlgebraElement,
    s: &[usize],
    u: &[usize],
) -> IntMatrix {
    let mut out = IntMatrix::zero(s.len(), u.len());
    for (i, &si) in s.iter().enumerate() {
        let si_inv = g.inv(si);
        for (k, &uk) in u.iter().enumerate() {
            out.set(i, k, c.coeffs[g.mul(si_inv, uk)]);
        }
    }
    out
}

/// A failed verification trial: the matrices and both products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub trial: u32,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub expected: IntMatrix,
    pub got: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub verified: bool,
    pub trials: u32,
    pub first_failure: Option<VerifyFailure>,
}

/// Checks one trial with explicit matrices; exposed so regression inputs can
/// be pinned.
pub fn verify_one(
    g: &Group,
    triple: &TppTriple,
    a: &IntMatrix,
    b: &IntMatrix,
) -> Result<bool, AlgebraError> {
    let ea = embed_left(g, a, &triple.s, &triple.t)?;
    let eb = embed_right(g, b, &triple.t, &triple.u)?;
    let c = convolve(g, &ea, &eb)?;
    let got = extract_product(g, &c, &triple.s, &triple.u);
    Ok(got == a.mul(b)?)
}

/// Draws `trials` random integer matrix pairs with entries in `[-9, 9]` and
/// compares the ring-product read-off against the direct product. Trial
/// seeds derive deterministically from the master seed, so trials can be
/// replayed (or run in any order) independently.
pub fn verify_realization(
    g: &Group,
    triple: &TppTriple,
    trials: u32,
    seed: u64,
) -> Result<VerifyOutcome, AlgebraError> {
    let (n, p, m) = triple.shape();
    for trial in 0..trials {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add((trial as u64).wrapping_mul(0x9e3779b97f4a7c15)));
        let a = IntMatrix::random(&mut rng, n, p, -9, 9);
        let b = IntMatrix::random(&mut rng, p, m, -9, 9);
        let ea = embed_left(g, &a, &triple.s, &triple.t)?;
        let eb = embed_right(g, &b, &triple.t, &triple.u)?;
        let c = convolve(g, &ea, &eb)?;
        let got = extract_product(g, &c, &triple.s, &triple.u);
        let expected = a.mul(&b)?;
        if got != expected {
            return Ok(VerifyOutcome {
                verified: false,
                trials,
                first_failure: Some(VerifyFailure { trial, a, b, expected, got }),
            });
        }
    }
    Ok(VerifyOutcome { verified: true, trials, first_failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    #[test]
    fn convolution_identities() {
        let c3 = cyclic(3).unwrap();
        let x = GroupAlgebraElement { order: 3, coeffs: vec![4, -2, 7] };
        let id = GroupAlgebraElement::delta(3, 0);
        assert_eq!(convolve(&c3, &id, &x).unwrap(), x);
        assert_eq!(convolve(&c3, &x, &id).unwrap(), x);

        let dg = GroupAlgebraElement::delta(3, 1);
        let dh = GroupAlgebraElement::delta(3, 2);
        assert_eq!(convolve(&c3, &dg, &dh).unwrap(), GroupAlgebraElement::delta(3, 0));

        // (1 + g)(1 + g^2) = 2 + g + g^2 in C3.
        let a = GroupAlgebraElement { order: 3, coeffs: vec![1, 1, 0] };
        let b = GroupAlgebraElement { order: 3, coeffs: vec![1, 0, 1] };
        assert_eq!(convolve(&c3, &a, &b).unwrap().coeffs, vec![2, 1, 1]);
    }

    #[test]
    fn group_mismatch_rejected() {
        let c3 = cyclic(3).unwrap();
        let x = GroupAlgebraElement::zero(3);
        let y = GroupAlgebraElement::zero(4);
        assert!(matches!(convolve(&c3, &x, &y), Err(AlgebraError::GroupMismatch { .. })));
    }

    #[test]
    fn embedding_coefficients_for_s3() {
        // S = {e, (1 2)}, T = {e, (1 3)}: the a22 entry lands on
        // (1 2)^-1 (1 3) = (1 3 2).
        let s3 = symmetric(3).unwrap();
        let t12 = s3.find_by_label("(1 2)").unwrap();
        let t13 = s3.find_by_label("(1 3)").unwrap();
        let c132 = s3.find_by_label("(1 3 2)").unwrap();
        let a = IntMatrix::from_rows(&[vec![10, 20], vec![30, 40]]);
        let e = embed_left(&s3, &a, &[0, t12], &[0, t13]).unwrap();
        assert_eq!(e.coeffs[0], 10);
        assert_eq!(e.coeffs[t13], 20);
        assert_eq!(e.coeffs[t12], 30);
        assert_eq!(e.coeffs[c132], 40);
    }

    #[test]
    fn zero_and_diagonal_embeddings() {
        let s3 = symmetric(3).unwrap();
        let z = IntMatrix::zero(2, 2);
        assert!(embed_left(&s3, &z, &[0, 1], &[0, 2]).unwrap().is_zero());

        // Identity matrix with S = T collapses onto the group identity.
        let id = IntMatrix::identity(3);
        let e = embed_left(&s3, &id, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(e.coeffs[0], 3);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let s3 = symmetric(3).unwrap();
        let a = IntMatrix::zero(2, 3);
        assert!(matches!(
            embed_left(&s3, &a, &[0, 1], &[0, 1]),
            Err(AlgebraError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn s3_triple_reproduces_matrix_product() {
        let s3 = symmetric(3).unwrap();
        let t12 = s3.find_by_label("(1 2)").unwrap();
        let t13 = s3.find_by_label("(1 3)").unwrap();
        let t23 = s3.find_by_label("(2 3)").unwrap();
        let triple =
            TppTriple::new(6, vec![0, t12], vec![0, t13], vec![0, t23]).unwrap();
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![5, 6], vec![7, 8]]);
        let ea = embed_left(&s3, &a, &triple.s, &triple.t).unwrap();
        let eb = embed_right(&s3, &b, &triple.t, &triple.u).unwrap();
        let c = convolve(&s3, &ea, &eb).unwrap();
        let got = extract_product(&s3, &c, &triple.s, &triple.u);
        assert_eq!(got, IntMatrix::from_rows(&[vec![19, 22], vec![43, 50]]));
        assert!(verify_one(&s3, &triple, &a, &b).unwrap());
    }

    #[test]
    fn verify_realization_on_s3() {
        let s3 = symmetric(3).unwrap();
        let t12 = s3.find_by_label("(1 2)").unwrap();
        let t13 = s3.find_by_label("(1 3)").unwrap();
        let t23 = s3.find_by_label("(2 3)").unwrap();
        let triple =
            TppTriple::new(6, vec![0, t12], vec![0, t13], vec![0, t23]).unwrap();
        let out = verify_realization(&s3, &triple, 100, 12345).unwrap();
        assert!(out.verified);
        assert_eq!(out.trials, 100);
    }

    #[test]
    fn non_triple_fails_verification() {
        let s3 = symmetric(3).unwrap();
        let t12 = s3.find_by_label("(1 2)").unwrap();
        let bad = TppTriple::new(6, vec![0, t12], vec![0, t12], vec![0, t12]).unwrap();
        let out = verify_realization(&s3, &bad, 100, 999).unwrap();
        assert!(!out.verified);
        assert!(out.first_failure.is_some());
    }

    #[test]
    fn extract_from_delta() {
        let s3 = symmetric(3).unwrap();
        let d = GroupAlgebraElement::delta(6, 0);
        let m = extract_product(&s3, &d, &[0, 1], &[0, 1]);
        assert_eq!(m, IntMatrix::identity(2));
        let z = GroupAlgebraElement::zero(6);
        assert!(extract_product(&s3, &z, &[0, 1], &[0, 1]).entries.iter().all(|&x| x == 0));
    }
}
