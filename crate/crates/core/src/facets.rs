//! The 120 facets of the Clifford polytope and the facet-inequality membership test.
//!
//! Facets are generated from three seeds, `A` (a column of ones), `Aᵀ`, and
//!
//! ```text
//!     ⎡ 0  1  0 ⎤
//! B = ⎢ 1  0 -1 ⎥
//!     ⎣ 1  0  1 ⎦
//! ```
//!
//! by two-sided multiplication with every pair of Clifford elements. A matrix
//! `M` lies in the polytope iff `M·F ≤ 1` for every facet `F`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::clifford::{flatten, int_det, int_mul, int_transpose, CliffordGroup, IntMat3};
use crate::error::{Error, Result};
use crate::so3::Mat3;

pub const EPS_FACET: f64 = 1e-9;

pub const SEED_A: IntMat3 = [[1, 0, 0], [1, 0, 0], [1, 0, 0]];
pub const SEED_B: IntMat3 = [[0, 1, 0], [1, 0, -1], [1, 0, 1]];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetKind {
    A,
    AT,
    B,
}

impl FacetKind {
    pub fn is_a_type(self) -> bool {
        matches!(self, FacetKind::A | FacetKind::AT)
    }

    pub fn name(self) -> &'static str {
        match self {
            FacetKind::A => "A",
            FacetKind::AT => "AT",
            FacetKind::B => "B",
        }
    }
}

impl fmt::Display for FacetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub id: usize,
    pub kind: FacetKind,
    pub matrix: IntMat3,
}

impl Facet {
    pub fn as_mat3(&self) -> Mat3 {
        Mat3::from_int(&self.matrix)
    }
}

/// Structural classification of an integer matrix, `None` if it matches no kind.
pub fn classify(m: &IntMat3) -> Option<FacetKind> {
    let unit = |v: i32| v == 1 || v == -1;
    let nonzero_cols: Vec<usize> = (0..3).filter(|&j| (0..3).any(|i| m[i][j] != 0)).collect();
    let nonzero_rows: Vec<usize> = (0..3).filter(|&i| m[i].iter().any(|&v| v != 0)).collect();
    if let [j] = nonzero_cols[..] {
        if (0..3).all(|i| unit(m[i][j])) {
            return Some(FacetKind::A);
        }
    }
    if let [i] = nonzero_rows[..] {
        if m[i].iter().all(|&v| unit(v)) {
            return Some(FacetKind::AT);
        }
    }
    if m.iter().flatten().filter(|&&v| v != 0).count() != 5 || int_det(m) != -2 {
        return None;
    }
    // One isolated unit entry; the 2×2 block avoiding its row and column is all units.
    for i in 0..3 {
        for j in 0..3 {
            if !unit(m[i][j]) {
                continue;
            }
            let row_alone = (0..3).all(|k| k == j || m[i][k] == 0);
            let col_alone = (0..3).all(|k| k == i || m[k][j] == 0);
            let block = (0..3).filter(|&r| r != i).all(|r| (0..3).filter(|&c| c != j).all(|c| unit(m[r][c])));
            if row_alone && col_alone && block {
                return Some(FacetKind::B);
            }
        }
    }
    None
}

/// The facet list with ids, built once.
pub struct FacetSet {
    facets: Vec<Facet>,
}

impl FacetSet {
    pub fn get() -> &'static FacetSet {
        static SET: OnceLock<FacetSet> = OnceLock::new();
        SET.get_or_init(|| FacetSet { facets: enumerate_facets().expect("facet construction") })
    }

    pub fn all(&self) -> &[Facet] {
        &self.facets
    }

    pub fn of_kind(&self, kind: FacetKind) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(move |f| f.kind == kind)
    }

    pub fn a_type(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.kind.is_a_type())
    }

    pub fn find(&self, m: &IntMat3) -> Option<&Facet> {
        self.facets.binary_search_by_key(&flatten(m), |f| flatten(&f.matrix)).ok().map(|k| &self.facets[k])
    }
}

/// All distinct `C_i F C_j` for `F ∈ {A, Aᵀ, B}`, sorted lexicographically and
/// numbered in that order.
pub fn enumerate_facets() -> Result<Vec<Facet>> {
    let group = CliffordGroup::get();
    let mut distinct: BTreeSet<[i32; 9]> = BTreeSet::new();
    for seed in [SEED_A, int_transpose(&SEED_A), SEED_B] {
        for left in group.elements() {
            let partial = int_mul(&left.matrix, &seed);
            for right in group.elements() {
                distinct.insert(flatten(&int_mul(&partial, &right.matrix)));
            }
        }
    }
    if distinct.len() != 120 {
        return Err(Error::InternalConsistency(format!("expected 120 distinct facets, found {}", distinct.len())));
    }
    distinct
        .into_iter()
        .enumerate()
        .map(|(id, flat)| {
            let matrix = unflatten(&flat);
            let kind = classify(&matrix)
                .ok_or_else(|| Error::InternalConsistency(format!("unclassifiable facet {matrix:?}")))?;
            Ok(Facet { id, kind, matrix })
        })
        .collect()
}

/// B-type facets built entry by entry: an isolated `±1` at one of nine
/// positions, completed by the four sign patterns of the complementary 2×2
/// block that give `det = -2`.
pub fn enumerate_b_facets_direct() -> Vec<IntMat3> {
    let mut out = Vec::with_capacity(72);
    for i in 0..3 {
        for j in 0..3 {
            for sign in [1, -1] {
                let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
                for pattern in 0..16u8 {
                    let mut m = [[0; 3]; 3];
                    m[i][j] = sign;
                    for (k, (&r, &c)) in rows.iter().flat_map(|r| cols.iter().map(move |c| (r, c))).enumerate() {
                        m[r][c] = if pattern >> k & 1 == 1 { -1 } else { 1 };
                    }
                    if int_det(&m) == -2 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

pub fn facet_inner_product(m: &Mat3, f: &Facet) -> f64 {
    m.dot_int(&f.matrix)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Membership {
    Inside { max_inner_product: f64 },
    Outside { witness: Facet, value: f64 },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }

    pub fn max_inner_product(&self) -> f64 {
        match *self {
            Membership::Inside { max_inner_product } => max_inner_product,
            Membership::Outside { value, .. } => value,
        }
    }
}

/// Largest facet value and the lowest-id facet attaining it exactly.
pub fn max_facet<'a>(m: &Mat3, facets: impl IntoIterator<Item = &'a Facet>) -> Option<(&'a Facet, f64)> {
    let mut best: Option<(&Facet, f64)> = None;
    for f in facets {
        let v = facet_inner_product(m, f);
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((f, v));
        }
    }
    best
}

/// Facet-inequality membership. Integral inputs are compared exactly, others
/// with a slack of `EPS_FACET`.
pub fn polytope_membership(m: &Mat3) -> Membership {
    let set = FacetSet::get();
    if let Some(int) = m.as_integer(f64::MIN_POSITIVE).filter(|int| int.iter().flatten().all(|v| v.abs() <= 1 << 20)) {
        let mut best = (&set.all()[0], int_dot(&int, &set.all()[0].matrix));
        for f in &set.all()[1..] {
            let v = int_dot(&int, &f.matrix);
            if v > best.1 {
                best = (f, v);
            }
        }
        let (f, v) = best;
        return if v <= 1 {
            Membership::Inside { max_inner_product: f64::from(v) }
        } else {
            Membership::Outside { witness: *f, value: f64::from(v) }
        };
    }
    let (f, v) = max_facet(m, set.all()).expect("facet set is nonempty");
    if v <= 1.0 + EPS_FACET {
        Membership::Inside { max_inner_product: v }
    } else {
        Membership::Outside { witness: *f, value: v }
    }
}

/// Number of Clifford vertices on each facet's hyperplane, indexed by facet id.
pub fn vertices_per_facet() -> Vec<usize> {
    let group = CliffordGroup::get();
    FacetSet::get()
        .all()
        .iter()
        .map(|f| group.elements().iter().filter(|c| int_dot(&c.matrix, &f.matrix) == 1).count())
        .collect()
}

pub fn int_dot(a: &IntMat3, b: &IntMat3) -> i32 {
    (0..3).map(|i| (0..3).map(|j| a[i][j] * b[i][j]).sum::<i32>()).sum()
}

fn unflatten(flat: &[i32; 9]) -> IntMat3 {
    let mut m = [[0; 3]; 3];
    for k in 0..9 {
        m[k / 3][k % 3] = flat[k];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        let set = FacetSet::get();
        assert_eq!(set.all().len(), 120);
        assert_eq!(set.of_kind(FacetKind::A).count(), 24);
        assert_eq!(set.of_kind(FacetKind::AT).count(), 24);
        assert_eq!(set.of_kind(FacetKind::B).count(), 72);
        for (k, f) in set.all().iter().enumerate() {
            assert_eq!(f.id, k);
        }
    }

    #[test]
    fn direct_b_construction_agrees() {
        let direct = enumerate_b_facets_direct();
        assert_eq!(direct.len(), 72);
        assert!(direct.iter().all(|m| int_det(m) == -2));
        assert!(direct.contains(&SEED_B));
        let direct: HashSet<_> = direct.into_iter().collect();
        assert_eq!(direct.len(), 72);
        let conj: HashSet<_> = FacetSet::get().of_kind(FacetKind::B).map(|f| f.matrix).collect();
        assert_eq!(direct, conj);
    }

    #[test]
    fn every_facet_supports_the_polytope() {
        let group = CliffordGroup::get();
        for f in FacetSet::get().all() {
            let values: Vec<i32> = group.elements().iter().map(|c| int_dot(&c.matrix, &f.matrix)).collect();
            assert_eq!(*values.iter().max().unwrap(), 1, "{f:?}");
        }
    }

    #[test]
    fn closed_under_symmetries() {
        let set = FacetSet::get();
        let group = CliffordGroup::get();
        for f in set.all() {
            let t = set.find(&int_transpose(&f.matrix)).expect("transpose is a facet");
            let swapped = match f.kind {
                FacetKind::A => FacetKind::AT,
                FacetKind::AT => FacetKind::A,
                FacetKind::B => FacetKind::B,
            };
            assert_eq!(t.kind, swapped);
            for l in group.elements() {
                for r in group.elements() {
                    let g = int_mul(&int_mul(&l.matrix, &f.matrix), &r.matrix);
                    assert_eq!(set.find(&g).map(|x| x.kind), Some(f.kind));
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let a = Facet { id: 0, kind: FacetKind::A, matrix: SEED_A };
        let b = Facet { id: 0, kind: FacetKind::B, matrix: SEED_B };
        assert_eq!(facet_inner_product(&Mat3::IDENTITY, &a), 1.0);
        assert_eq!(facet_inner_product(&Mat3::IDENTITY, &b), 1.0);
        for f in FacetSet::get().all() {
            assert_eq!(facet_inner_product(&Mat3::ZERO, f), 0.0);
        }
    }

    #[test]
    fn membership_examples() {
        assert!(polytope_membership(&Mat3::ZERO).is_inside());
        for c in CliffordGroup::get().elements() {
            let m = polytope_membership(&c.as_mat3());
            assert_eq!(m, Membership::Inside { max_inner_product: 1.0 });
        }
        match polytope_membership(&Mat3::IDENTITY.scale(1.01)) {
            Membership::Outside { value, .. } => assert!((value - 1.01).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        // Exact integer path: 2·I is integral.
        assert!(!polytope_membership(&Mat3::IDENTITY.scale(2.0)).is_inside());
        // Boundary within slack counts as inside.
        assert!(polytope_membership(&Mat3::IDENTITY.scale(1.0 + 1e-12)).is_inside());
    }

    #[test]
    fn witness_is_lowest_id_among_ties() {
        // 2·I: every facet through I reaches 2, the lowest id must be reported.
        let m = Mat3::IDENTITY.scale(2.0);
        let Membership::Outside { witness, .. } = polytope_membership(&m) else { panic!() };
        let first = FacetSet::get()
            .all()
            .iter()
            .find(|f| int_dot(&f.matrix, &crate::clifford::IDENTITY_INT) == 1)
            .unwrap();
        assert_eq!(witness.id, first.id);
    }

    #[test]
    fn classify_rejects_non_facets() {
        assert_eq!(classify(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), None);
        assert_eq!(classify(&[[0, 1, 0], [1, 0, 1], [1, 0, 1]]), None);
        assert_eq!(classify(&SEED_A), Some(FacetKind::A));
        assert_eq!(classify(&int_transpose(&SEED_A)), Some(FacetKind::AT));
        assert_eq!(classify(&SEED_B), Some(FacetKind::B));
    }

    #[test]
    fn vertex_incidence_is_computed() {
        let counts = vertices_per_facet();
        assert_eq!(counts.len(), 120);
        assert!(counts.iter().all(|&c| c >= 1));
    }
}
