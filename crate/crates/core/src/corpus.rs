//! Named concrete groups beyond the basic families: the semidirect products
//! and matrix groups used by the screening data set and the comparison
//! corpus of small non-abelian groups.
//!
//! Constructions are by structure description (cyclic-on-cyclic actions,
//! module actions given by an integer matrix, permutation conjugation), and
//! every test that consumes them cross-checks class counts against the
//! shipped character degree patterns.

use crate::group::{
    alternating, cyclic, dicyclic, dihedral, direct_product, semidirect_product, symmetric, Group,
    GroupError,
};

/// `C_n ⋊ C_h` where the generator of `C_h` acts by `x -> k·x` (additively);
/// requires `k` to generate an automorphism whose order divides `h`.
pub fn cyclic_semidirect(n: usize, h: usize, k: usize) -> Result<Group, GroupError> {
    let base = cyclic(n)?;
    let top = cyclic(h)?;
    let mut action = Vec::with_capacity(h);
    let mut mult = 1usize;
    for _ in 0..h {
        action.push((0..n).map(|x| (x * mult) % n).collect());
        mult = (mult * k) % n;
    }
    semidirect_product(&base, &top, &action)
}

/// `(C_{m1} x C_{m2} x ...) ⋊ C_h` with the generator acting by an integer
/// matrix on the column of residues.
pub fn abelian_matrix_semidirect(
    moduli: &[usize],
    h: usize,
    mat: &[Vec<usize>],
) -> Result<Group, GroupError> {
    let dim = moduli.len();
    if mat.len() != dim || mat.iter().any(|r| r.len() != dim) {
        return Err(GroupError::InvalidParameter("action matrix must be dim x dim"));
    }
    let mut base = cyclic(moduli[0])?;
    for &m in &moduli[1..] {
        base = direct_product(&base, &cyclic(m)?)?;
    }
    let n = base.order();
    // Index <-> coordinate conversion matches direct_product's layout:
    // (((x1, x2), x3), ...) with the later factor as the fast index.
    let to_coords = |mut idx: usize| -> Vec<usize> {
        let mut c = vec![0; dim];
        for i in (0..dim).rev() {
            c[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        c
    };
    let from_coords = |c: &[usize]| -> usize {
        let mut idx = 0;
        for i in 0..dim {
            idx = idx * moduli[i] + c[i];
        }
        idx
    };
    let apply = |mat: &[Vec<usize>], x: usize| -> usize {
        let c = to_coords(x);
        let out: Vec<usize> = (0..dim)
            .map(|i| {
                let mut acc = 0usize;
                for j in 0..dim {
                    acc += mat[i][j] * c[j];
                }
                acc % moduli[i]
            })
            .collect();
        from_coords(&out)
    };

    let top = cyclic(h)?;
    let mut action: Vec<Vec<usize>> = Vec::with_capacity(h);
    let mut power: Vec<usize> = (0..n).collect();
    for _ in 0..h {
        action.push(power.clone());
        power = power.iter().map(|&x| apply(mat, x)).collect();
    }
    semidirect_product(&base, &top, &action)
}

/// Semidihedral group of order 16: `C8 ⋊ C2` with `x -> 3x`.
pub fn qd16() -> Group {
    cyclic_semidirect(8, 2, 3).expect("valid construction")
}

/// Modular group of order 16: `C8 ⋊ C2` with `x -> 5x`.
pub fn modular16() -> Group {
    cyclic_semidirect(8, 2, 5).expect("valid construction")
}

/// `C4 ⋊ C4` with the generator inverting the base.
pub fn c4_semidirect_c4() -> Group {
    cyclic_semidirect(4, 4, 3).expect("valid construction")
}

/// `C3^2 ⋊ C2` with inversion (generalized dihedral of order 18).
pub fn c3sq_semidirect_c2() -> Group {
    abelian_matrix_semidirect(&[3, 3], 2, &[vec![2, 0], vec![0, 2]]).expect("valid construction")
}

/// Frobenius group of order 20: `C5 ⋊ C4`, faithful action `x -> 2x`.
pub fn f20() -> Group {
    cyclic_semidirect(5, 4, 2).expect("valid construction")
}

/// `C3 ⋊ C8` of order 24: the generator inverts the base.
pub fn c3_semidirect_c8() -> Group {
    cyclic_semidirect(3, 8, 2).expect("valid construction")
}

/// Heisenberg group of order 27: `C3^2 ⋊ C3`, exponent 3.
pub fn heisenberg27() -> Group {
    abelian_matrix_semidirect(&[3, 3], 3, &[vec![1, 1], vec![0, 1]]).expect("valid construction")
}

/// `C9 ⋊ C3` of order 27, exponent 9: action `x -> 4x`.
pub fn c9_semidirect_c3() -> Group {
    cyclic_semidirect(9, 3, 4).expect("valid construction")
}

/// `SL(2,3)` as `Q8 ⋊ C3`: the order-3 automorphism cycles `a -> b -> ab`.
pub fn sl23() -> Group {
    let q8 = dicyclic(2).expect("Q8");
    let c3 = cyclic(3).expect("C3");
    // Indices in dicyclic(2): 0..4 are a^k, 4..8 are a^k·b.
    let sigma: Vec<usize> = vec![0, 4, 2, 6, 5, 1, 7, 3];
    let sigma2: Vec<usize> = (0..8).map(|x| sigma[sigma[x]]).collect();
    let action = vec![(0..8).collect(), sigma, sigma2];
    semidirect_product(&q8, &c3, &action).expect("valid construction")
}

/// `GL(2,3)` by direct enumeration of invertible 2x2 matrices over F3.
pub fn gl23() -> Group {
    let mats: Vec<[usize; 4]> = (0..81)
        .map(|i| [i / 27 % 3, i / 9 % 3, i / 3 % 3, i % 3])
        .filter(|m| (m[0] * m[3] + 2 * m[1] * m[2]) % 3 != 0)
        .collect();
    let index = |m: &[usize; 4]| mats.iter().position(|x| x == m).unwrap();
    let table: Vec<Vec<usize>> = mats
        .iter()
        .map(|a| {
            mats.iter()
                .map(|b| {
                    let p = [
                        (a[0] * b[0] + a[1] * b[2]) % 3,
                        (a[0] * b[1] + a[1] * b[3]) % 3,
                        (a[2] * b[0] + a[3] * b[2]) % 3,
                        (a[2] * b[1] + a[3] * b[3]) % 3,
                    ];
                    index(&p)
                })
                .collect()
        })
        .collect();
    let (mut g, map) = Group::from_cayley_table_mapped(&table).expect("GL(2,3) is a group");
    let mut labels = vec![String::new(); mats.len()];
    for (old, m) in mats.iter().enumerate() {
        labels[map[old]] = format!("[{},{};{},{}]", m[0], m[1], m[2], m[3]);
    }
    g.set_labels(labels).expect("label count");
    g
}

/// `A4 ⋊ C4` of order 48: `C4` acts through its quotient of order 2 by
/// conjugation with a transposition (the outer automorphism of A4).
pub fn a4_semidirect_c4() -> Group {
    let a4 = alternating(4).expect("A4");
    let c4 = cyclic(4).expect("C4");
    let perms = crate::group::permutation_elements(4, true);
    let index = |p: &[u8]| perms.iter().position(|x| x.as_slice() == p).unwrap();
    // Conjugation by the transposition (0 1).
    let tau = |p: &[u8]| -> Vec<u8> {
        let swap = |v: u8| match v {
            0 => 1,
            1 => 0,
            x => x,
        };
        let mut out = vec![0u8; 4];
        for i in 0..4 {
            out[swap(i as u8) as usize] = swap(p[i]);
        }
        out
    };
    let outer: Vec<usize> = perms.iter().map(|p| index(&tau(p))).collect();
    let id: Vec<usize> = (0..a4.order()).collect();
    let action = vec![id.clone(), outer.clone(), id, outer];
    semidirect_product(&a4, &c4, &action).expect("valid construction")
}

/// `C4^2 ⋊ C3` of order 48: the order-3 module action `(x, y) -> (-y, x-y)`.
pub fn c4sq_semidirect_c3() -> Group {
    abelian_matrix_semidirect(&[4, 4], 3, &[vec![0, 3], vec![1, 3]]).expect("valid construction")
}

/// `C2^4 ⋊ C3` of order 48 with a fixed-point-free action (two blocks of the
/// order-3 rotation on F2^2).
pub fn c2pow4_semidirect_c3() -> Group {
    abelian_matrix_semidirect(
        &[2, 2, 2, 2],
        3,
        &[vec![0, 1, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 1]],
    )
    .expect("valid construction")
}

/// `C2^2 ⋊ C9` of order 36: `C9` acts through `C3` rotating the three
/// involutions.
pub fn c2sq_semidirect_c9() -> Group {
    abelian_matrix_semidirect(&[2, 2], 9, &[vec![0, 1], vec![1, 1]]).expect("valid construction")
}

/// `C2^3 ⋊ C7` of order 56: multiplication by a generator of F8*.
pub fn c2cubed_semidirect_c7() -> Group {
    // x -> alpha*x in F8 = F2[t]/(t^3 + t + 1), basis {1, t, t^2}.
    abelian_matrix_semidirect(
        &[2, 2, 2],
        7,
        &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]],
    )
    .expect("valid construction")
}

/// `C15 ⋊ C4`: the generator acts faithfully on `C5` (`x -> 2x`) and by
/// inversion on `C3`.
pub fn c15_semidirect_c4() -> Group {
    let c15 = direct_product(&cyclic(3).unwrap(), &cyclic(5).unwrap()).unwrap();
    let c4 = cyclic(4).unwrap();
    // Index layout: (x3, x5) -> x3*5 + x5.
    let apply = |x: usize, k3: usize, k5: usize| -> usize {
        let (x3, x5) = (x / 5, x % 5);
        (x3 * k3 % 3) * 5 + (x5 * k5 % 5)
    };
    let mut action = Vec::new();
    let (mut k3, mut k5) = (1usize, 1usize);
    for _ in 0..4 {
        let (a3, a5) = (k3, k5);
        action.push((0..15).map(|x| apply(x, a3, a5)).collect());
        k3 = k3 * 2 % 3;
        k5 = k5 * 2 % 5;
    }
    semidirect_product(&c15, &c4, &action).expect("valid construction")
}

/// The order-16 non-abelian comparison corpus (all constructible without
/// ambiguity), keyed by conventional names.
pub fn order16_corpus() -> Vec<(&'static str, Group)> {
    vec![
        ("D16", dihedral(8).unwrap()),
        ("QD16", qd16()),
        ("M16 (C8:C2)", modular16()),
        ("Q16", dicyclic(4).unwrap()),
        ("C4:C4", c4_semidirect_c4()),
        ("C2xD8", direct_product(&cyclic(2).unwrap(), &dihedral(4).unwrap()).unwrap()),
        ("C2xQ8", direct_product(&cyclic(2).unwrap(), &dicyclic(2).unwrap()).unwrap()),
    ]
}

/// Non-abelian groups of orders 16..26 matching the runtime-comparison table
/// rows that this library can construct unambiguously.
pub fn comparison_corpus() -> Vec<(&'static str, Group)> {
    let c2 = cyclic(2).unwrap();
    let c3 = cyclic(3).unwrap();
    let c4 = cyclic(4).unwrap();
    let mut corpus = order16_corpus();
    corpus.extend([
        ("D18", dihedral(9).unwrap()),
        ("C3xS3", direct_product(&c3, &symmetric(3).unwrap()).unwrap()),
        ("C3^2:C2", c3sq_semidirect_c2()),
        ("Dic5 (C5:C4)", dicyclic(5).unwrap()),
        ("F20 (C5:C4)", f20()),
        ("D20", dihedral(10).unwrap()),
        ("D22", dihedral(11).unwrap()),
        ("C3:C8", c3_semidirect_c8()),
        ("Dic6 (C3:Q8)", dicyclic(6).unwrap()),
        ("C4xS3", direct_product(&c4, &symmetric(3).unwrap()).unwrap()),
        ("D24", dihedral(12).unwrap()),
        ("C2xDic3", direct_product(&c2, &dicyclic(3).unwrap()).unwrap()),
        ("C3xD8", direct_product(&c3, &dihedral(4).unwrap()).unwrap()),
        ("C3xQ8", direct_product(&c3, &dicyclic(2).unwrap()).unwrap()),
        ("C2^2xS3", {
            let v4 = direct_product(&c2, &c2).unwrap();
            direct_product(&v4, &symmetric(3).unwrap()).unwrap()
        }),
        ("D26", dihedral(13).unwrap()),
    ]);
    corpus
}

/// `C3 x C3 x C3`: the positive control whose direct factors witness
/// `⟨3,3,3⟩`.
pub fn c3_cubed() -> Group {
    let c3 = cyclic(3).unwrap();
    direct_product(&direct_product(&c3, &c3).unwrap(), &c3).unwrap()
}

/// Small groups (order <= 18) for exhaustive cross-checks between the two
/// search algorithms, abelian ones included.
pub fn small_test_corpus() -> Vec<(&'static str, Group)> {
    let c2 = cyclic(2).unwrap();
    let c3 = cyclic(3).unwrap();
    let mut corpus: Vec<(&'static str, Group)> = vec![
        ("C6", cyclic(6).unwrap()),
        ("S3", symmetric(3).unwrap()),
        ("C8", cyclic(8).unwrap()),
        ("C2^3", direct_product(&direct_product(&c2, &c2).unwrap(), &c2).unwrap()),
        ("D8", dihedral(4).unwrap()),
        ("Q8", dicyclic(2).unwrap()),
        ("C3^2", direct_product(&c3, &c3).unwrap()),
        ("C12", cyclic(12).unwrap()),
        ("A4", alternating(4).unwrap()),
        ("D12", dihedral(6).unwrap()),
        ("C15", cyclic(15).unwrap()),
        ("C16", cyclic(16).unwrap()),
        ("C17", cyclic(17).unwrap()),
        ("C18", cyclic(18).unwrap()),
    ];
    corpus.extend(order16_corpus());
    corpus.extend([
        ("D18", dihedral(9).unwrap()),
        ("C3xS3", direct_product(&c3, &symmetric(3).unwrap()).unwrap()),
        ("C3^2:C2", c3sq_semidirect_c2()),
    ]);
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_orders_and_class_counts() {
        // (group, order, expected class count) — class counts must agree
        // with the shipped character degree patterns.
        let cases: Vec<(Group, usize, usize)> = vec![
            (qd16(), 16, 7),
            (modular16(), 16, 10),
            (c4_semidirect_c4(), 16, 10),
            (c3sq_semidirect_c2(), 18, 6),
            (f20(), 20, 5),
            (c3_semidirect_c8(), 24, 12),
            (heisenberg27(), 27, 11),
            (c9_semidirect_c3(), 27, 11),
            (sl23(), 24, 7),
            (gl23(), 48, 8),
            (a4_semidirect_c4(), 48, 10),
            (c4sq_semidirect_c3(), 48, 8),
            (c2pow4_semidirect_c3(), 48, 8),
            (c2sq_semidirect_c9(), 36, 12),
            (c2cubed_semidirect_c7(), 56, 8),
            (c15_semidirect_c4(), 60, 9),
        ];
        for (g, order, classes) in cases {
            assert_eq!(g.order(), order);
            assert_eq!(g.class_count(), classes, "class count for order {order}");
        }
    }

    #[test]
    fn corpus_groups_are_nonabelian_at_listed_orders() {
        for (name, g) in comparison_corpus() {
            assert!(!g.is_abelian(), "{name} must be non-abelian");
            assert!([16, 18, 20, 22, 24, 26].contains(&g.order()), "{name}");
        }
    }

    #[test]
    fn distinct_order16_groups() {
        use crate::group::index2_subgroups;
        let corpus = order16_corpus();
        // Pairwise distinguishable by cheap invariants, so no construction
        // collapsed into another.
        let mut sigs: Vec<(usize, usize, usize, usize)> = corpus
            .iter()
            .map(|(_, g)| {
                (
                    g.class_count(),
                    (1..16).filter(|&x| g.mul(x, x) == 0).count(),
                    index2_subgroups(g).len(),
                    (0..16).map(|x| g.element_order(x)).max().unwrap(),
                )
            })
            .collect();
        sigs.sort_unstable();
        sigs.dedup();
        assert_eq!(sigs.len(), corpus.len(), "constructions collapsed: {sigs:?}");
    }
}
