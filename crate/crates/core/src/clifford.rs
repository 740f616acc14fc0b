//! The 24 single-qubit Clifford operations as SO(3) signed permutation matrices.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::so3::{Mat3, Rotation3};

pub type IntMat3 = [[i32; 3]; 3];

pub const IDENTITY_INT: IntMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Residual allowed when snapping a float matrix to a Clifford element.
const LOOKUP_TOL: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    pub index: usize,
    pub matrix: IntMat3,
}

impl CliffordElement {
    pub fn as_mat3(&self) -> Mat3 {
        Mat3::from_int(&self.matrix)
    }

    pub fn as_rotation(&self) -> Rotation3 {
        Rotation3::from_trusted(self.as_mat3())
    }

    pub fn row_major(&self) -> [i32; 9] {
        flatten(&self.matrix)
    }
}

/// The full group with its Cayley table, built once.
pub struct CliffordGroup {
    elements: Vec<CliffordElement>,
    by_matrix: HashMap<IntMat3, usize>,
    table: Vec<[usize; 24]>,
    inverse: [usize; 24],
}

impl CliffordGroup {
    fn build() -> Self {
        let elements = enumerate_cliffords();
        let by_matrix: HashMap<IntMat3, usize> = elements.iter().map(|c| (c.matrix, c.index)).collect();
        let mut table = vec![[0usize; 24]; 24];
        for a in &elements {
            for b in &elements {
                let prod = int_mul(&a.matrix, &b.matrix);
                table[a.index][b.index] = by_matrix[&prod];
            }
        }
        let mut inverse = [0usize; 24];
        for a in &elements {
            inverse[a.index] = by_matrix[&int_transpose(&a.matrix)];
        }
        CliffordGroup { elements, by_matrix, table, inverse }
    }

    pub fn get() -> &'static CliffordGroup {
        static GROUP: OnceLock<CliffordGroup> = OnceLock::new();
        GROUP.get_or_init(CliffordGroup::build)
    }

    pub fn elements(&self) -> &[CliffordElement] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &CliffordElement {
        &self.elements[index]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of(&self, m: &IntMat3) -> Option<usize> {
        self.by_matrix.get(m).copied()
    }
}

/// All 24 signed permutation matrices with determinant +1, in canonical order:
/// lexicographic on the flattened row-major entries, with the identity moved
/// to index 0.
pub fn enumerate_cliffords() -> Vec<CliffordElement> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut mats: Vec<IntMat3> = Vec::with_capacity(24);
    for perm in PERMS {
        for signs in 0..8u8 {
            let mut m = [[0; 3]; 3];
            for (row, &col) in perm.iter().enumerate() {
                m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
            }
            if int_det(&m) == 1 {
                mats.push(m);
            }
        }
    }
    mats.sort_by_key(flatten);
    let id = mats.iter().position(|m| *m == IDENTITY_INT).expect("identity is a signed permutation");
    mats.swap(0, id);
    mats.into_iter().enumerate().map(|(index, matrix)| CliffordElement { index, matrix }).collect()
}

pub fn clifford_multiply(a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
    let group = CliffordGroup::get();
    *group.element(group.multiply(a.index, b.index))
}

/// The Clifford element equal to `m` after rounding, if any.
pub fn clifford_lookup(m: &Mat3) -> Option<CliffordElement> {
    let group = CliffordGroup::get();
    let int = m.as_integer(LOOKUP_TOL)?;
    group.index_of(&int).map(|i| *group.element(i))
}

pub fn flatten(m: &IntMat3) -> [i32; 9] {
    let mut out = [0; 9];
    for k in 0..9 {
        out[k] = m[k / 3][k % 3];
    }
    out
}

pub fn int_mul(a: &IntMat3, b: &IntMat3) -> IntMat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn int_transpose(m: &IntMat3) -> IntMat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

pub fn int_det(m: &IntMat3) -> i32 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `C · m · D` for signed permutations, computed by index shuffling.
pub fn sandwich(left: &IntMat3, m: &Mat3, right: &IntMat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        let (li, ls) = signed_pos(&left[i]);
        for j in 0..3 {
            let (rj, rs) = signed_col(right, j);
            out[i][j] = f64::from(ls * rs) * m.0[li][rj];
        }
    }
    Mat3(out)
}

fn signed_pos(row: &[i32; 3]) -> (usize, i32) {
    let k = row.iter().position(|&v| v != 0).expect("signed permutation row has a nonzero");
    (k, row[k])
}

fn signed_col(m: &IntMat3, j: usize) -> (usize, i32) {
    let k = (0..3).find(|&k| m[k][j] != 0).expect("signed permutation column has a nonzero");
    (k, m[k][j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so3::{rotation_from_unitary, Unitary2};
    use num_complex::Complex64 as C64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn twenty_four_distinct_elements() {
        let els = enumerate_cliffords();
        assert_eq!(els.len(), 24);
        let set: HashSet<_> = els.iter().map(|c| c.matrix).collect();
        assert_eq!(set.len(), 24);
        assert_eq!(els[0].matrix, IDENTITY_INT);
        for (i, c) in els.iter().enumerate() {
            assert_eq!(c.index, i);
            assert_eq!(int_det(&c.matrix), 1);
            for r in 0..3 {
                assert_eq!(c.matrix[r].iter().filter(|&&v| v != 0).count(), 1);
                assert_eq!((0..3).filter(|&k| c.matrix[k][r] != 0).count(), 1);
            }
        }
    }

    #[test]
    fn exactly_the_even_half_of_signed_permutations() {
        let mut all = 0;
        let mut even = 0;
        for a in [-1, 0, 1] {
            for b in [-1, 0, 1] {
                for c in [-1, 0, 1] {
                    for d in [-1, 0, 1] {
                        for e in [-1, 0, 1] {
                            for f in [-1, 0, 1] {
                                for g in [-1, 0, 1] {
                                    for h in [-1, 0, 1] {
                                        for i in [-1, 0, 1] {
                                            let m = [[a, b, c], [d, e, f], [g, h, i]];
                                            let rows_ok = m.iter().all(|r| r.iter().filter(|&&v| v != 0).count() == 1);
                                            let cols_ok = (0..3).all(|j| (0..3).filter(|&k| m[k][j] != 0).count() == 1);
                                            if rows_ok && cols_ok {
                                                all += 1;
                                                if int_det(&m) == 1 {
                                                    even += 1;
                                                    assert!(CliffordGroup::get().index_of(&m).is_some());
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!((all, even), (48, 24));
    }

    #[test]
    fn ordering_is_sorted_after_identity() {
        let els: Vec<_> = enumerate_cliffords().iter().map(|c| c.row_major()).collect();
        let mut expected = els.clone();
        expected.sort();
        let id = expected.iter().position(|m| *m == flatten(&IDENTITY_INT)).unwrap();
        expected.swap(0, id);
        assert_eq!(els, expected);
        // Stable across calls.
        assert_eq!(enumerate_cliffords(), enumerate_cliffords());
    }

    #[test]
    fn group_axioms() {
        let g = CliffordGroup::get();
        let els = g.elements();
        for a in els {
            assert_eq!(clifford_multiply(&els[0], a), *a);
            assert_eq!(clifford_multiply(a, &els[0]), *a);
            let inv = CliffordElement { index: 0, matrix: int_transpose(&a.matrix) };
            let inv = clifford_lookup(&inv.as_mat3()).unwrap();
            assert_eq!(clifford_multiply(a, &inv).index, 0);
            assert_eq!(g.inverse(a.index), inv.index);
            let mut row: Vec<usize> = (0..24).map(|b| g.multiply(a.index, b)).collect();
            row.sort();
            assert_eq!(row, (0..24).collect::<Vec<_>>());
            for b in els {
                let p = clifford_multiply(a, b);
                assert_eq!(p.matrix, int_mul(&a.matrix, &b.matrix));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let (a, b, c) = (rng.random_range(0..24), rng.random_range(0..24), rng.random_range(0..24));
            assert_eq!(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(clifford_lookup(&Mat3::IDENTITY).unwrap().index, 0);
        assert!(clifford_lookup(&Mat3::IDENTITY.scale(0.5)).is_none());
        assert!(clifford_lookup(&Mat3::IDENTITY.scale(2.0)).is_none());

        // Hadamard: (X + Z)/√2 swaps the x and z axes.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = Unitary2::new([[C64::new(h, 0.0), C64::new(h, 0.0)], [C64::new(h, 0.0), C64::new(-h, 0.0)]])
            .unwrap();
        let r = rotation_from_unitary(&had).unwrap();
        let c = clifford_lookup(r.as_mat()).expect("Hadamard is Clifford");
        assert_eq!(c.matrix, [[0, 0, 1], [0, -1, 0], [1, 0, 0]]);

        // Phase gate S = diag(1, i).
        let s = Unitary2::new([[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(0.0, 1.0)]])
            .unwrap();
        assert!(clifford_lookup(rotation_from_unitary(&s).unwrap().as_mat()).is_some());
    }

    #[test]
    fn sandwich_matches_dense_product() {
        let g = CliffordGroup::get();
        let m = Mat3([[0.1, -0.2, 0.3], [0.4, 0.5, -0.6], [0.7, 0.8, 0.9]]);
        for a in g.elements() {
            for b in g.elements() {
                let dense = a.as_mat3() * m * b.as_mat3();
                assert_eq!(sandwich(&a.matrix, &m, &b.matrix), dense);
            }
        }
    }
}
