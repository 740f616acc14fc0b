//! Machine verification of the tightness theorem: every rotation that
//! violates an A-type facet violates a B-type facet at least as much.
//!
//! The constructive argument is checked step by step for each sample:
//!
//! 1. [`canonicalize`] moves the rotation by Clifford symmetries (and possibly
//!    a transpose) so that the all-ones first column is the best A-type facet
//!    and the most negative entry outside the first column sits at `(1,2)`.
//! 2. [`check_sign_pattern`] confirms the canonical rotation has one of four
//!    sign patterns.
//! 3. [`verify_key_inequality`] evaluates `Rc·(B − A)` and the equivalent
//!    `‖v‖₁ − ‖u‖₁` with `u = (R₁₁, R₁₂)`, `v = (R₂₃, R₃₃)`.
//! 4. [`constructive_b_facet`] maps the canonical `B` back to a facet of the
//!    original rotation.
//!
//! [`verify_global_dominance`] checks the end statement directly by scanning
//! all 120 facets, independently of the steps above.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::{int_mul, int_transpose, sandwich, CliffordGroup, IntMat3};
use crate::error::{Error, Result};
use crate::facets::{FacetKind, FacetSet, SEED_A, SEED_B};
use crate::sampling::{haar_chunk, stress_set, CHUNK};
use crate::so3::{Mat3, Rotation3};

pub const VIOLATION_TOL: f64 = 1e-9;
pub const CANON_TOL: f64 = 1e-12;
pub const REWRITE_TOL: f64 = 1e-12;
pub const WILDCARD_TOL: f64 = 1e-9;

pub const A_PRIME_1: IntMat3 = [[1, -1, 0], [1, 0, 0], [1, 0, 0]];
const CYCLE: IntMat3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]];
const QUARTER_X: IntMat3 = [[1, 0, 0], [0, 0, 1], [0, -1, 0]];

/// The four admissible sign patterns of a canonical rotation.
pub const SIGN_PATTERNS: [[[i8; 3]; 3]; 4] = [
    [[1, -1, 1], [1, 1, -1], [1, 1, 1]],
    [[1, -1, -1], [1, 1, -1], [1, 1, 1]],
    [[1, -1, -1], [1, 1, -1], [1, -1, 1]],
    [[1, -1, 1], [1, -1, -1], [1, 1, 1]],
];

/// The twelve matrices `P^j A′₁ Q^k` (`P` a cyclic row shift, `Q` a quarter
/// turn about x), `A′₁` first. Each is the all-ones first column plus one
/// `±1` outside it.
pub fn a_prime_matrices() -> Vec<IntMat3> {
    let mut out = vec![A_PRIME_1];
    let mut left = CYCLE;
    for _ in 0..3 {
        let mut right = QUARTER_X;
        for _ in 0..4 {
            let m = int_mul(&int_mul(&left, &A_PRIME_1), &right);
            if !out.contains(&m) {
                out.push(m);
            }
            right = int_mul(&right, &QUARTER_X);
        }
        left = int_mul(&left, &CYCLE);
    }
    out
}

/// Largest A-type facet value: the largest absolute row or column sum.
pub fn max_a_value(m: &Mat3) -> f64 {
    let col = (0..3).map(|j| (0..3).map(|i| m[(i, j)].abs()).sum::<f64>());
    let row = (0..3).map(|i| (0..3).map(|j| m[(i, j)].abs()).sum::<f64>());
    col.chain(row).fold(f64::NEG_INFINITY, f64::max)
}

pub fn max_b_value(m: &Mat3) -> f64 {
    FacetSet::get().of_kind(FacetKind::B).map(|f| m.dot_int(&f.matrix)).fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CanonicalizationRecord {
    pub left: usize,
    pub right: usize,
    pub transposed: bool,
    /// `C_left · (R or Rᵀ) · C_right`.
    pub canonical_rotation: Rotation3,
}

/// First `(left, right, transposed)` in scan order that makes the canonical
/// A facet maximal among the 48 A/AT facets and `A′₁` maximal among the `A′ᵢ`.
pub fn canonicalize(r: &Rotation3) -> Result<CanonicalizationRecord> {
    let group = CliffordGroup::get();
    let target = max_a_value(r.as_mat()) - CANON_TOL;
    let rt = r.transpose();
    for left in group.elements() {
        for right in group.elements() {
            for (transposed, m) in [(false, r), (true, &rt)] {
                // First-column sum only needs three entries.
                let (rj, rs) = (0..3).find_map(|k| (right.matrix[k][0] != 0).then(|| (k, right.matrix[k][0]))).unwrap();
                let col_sum: f64 = (0..3)
                    .map(|i| {
                        let (li, ls) = (0..3).find_map(|k| (left.matrix[i][k] != 0).then(|| (k, left.matrix[i][k]))).unwrap();
                        f64::from(ls * rs) * m[(li, rj)]
                    })
                    .sum();
                if col_sum < target {
                    continue;
                }
                let rc = sandwich(&left.matrix, m.as_mat(), &right.matrix);
                if a_prime_1_is_max(&rc) {
                    return Ok(CanonicalizationRecord {
                        left: left.index,
                        right: right.index,
                        transposed,
                        canonical_rotation: Rotation3::from_trusted(rc),
                    });
                }
            }
        }
    }
    Err(Error::TheoremViolation(format!("no Clifford symmetry canonicalizes {:?}", r.as_mat())))
}

/// `Rc·A′₁ ≥ Rc·A′ᵢ` for all twelve `A′ᵢ`, i.e. `-R₁₂ ≥ |Rᵢⱼ|` for `j ≥ 2`.
///
/// Compared entrywise and without tolerance. Near an axis the key margin
/// moves like the square root of any slack allowed here, so a 1e-12 tie
/// window would let margins of order 1e-6 through.
pub fn a_prime_1_is_max(rc: &Mat3) -> bool {
    let lead = -rc[(0, 1)];
    (0..3).all(|i| (1..3).all(|j| rc[(i, j)].abs() <= lead))
}

/// Index in `1..=4` of the matching sign pattern; entries within
/// `WILDCARD_TOL` of zero match either sign.
pub fn check_sign_pattern(rc: &Rotation3) -> Option<usize> {
    SIGN_PATTERNS
        .iter()
        .position(|pat| {
            (0..3).all(|i| (0..3).all(|j| rc[(i, j)].abs() <= WILDCARD_TOL || rc[(i, j)].signum() == f64::from(pat[i][j])))
        })
        .map(|k| k + 1)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TwoVectorPair {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl TwoVectorPair {
    pub fn from_canonical(rc: &Rotation3) -> Self {
        TwoVectorPair { u: [rc[(0, 0)], rc[(0, 1)]], v: [rc[(1, 2)], rc[(2, 2)]] }
    }

    pub fn l1_difference(&self) -> f64 {
        l1(&self.v) - l1(&self.u)
    }

    pub fn l2_mismatch(&self) -> f64 {
        (l2(&self.u) - l2(&self.v)).abs()
    }
}

fn l1(x: &[f64; 2]) -> f64 {
    x[0].abs() + x[1].abs()
}

fn l2(x: &[f64; 2]) -> f64 {
    x[0].hypot(x[1])
}

fn linf(x: &[f64; 2]) -> f64 {
    x[0].abs().max(x[1].abs())
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct KeyInequality {
    /// `Rc·(B − A)`.
    pub margin: f64,
    /// `‖v‖₁ − ‖u‖₁`.
    pub norm_difference: f64,
    pub pair: TwoVectorPair,
}

pub fn verify_key_inequality(rc: &Rotation3) -> Result<KeyInequality> {
    let m = rc.as_mat();
    let margin = m.dot_int(&SEED_B) - m.dot_int(&SEED_A);
    let pair = TwoVectorPair::from_canonical(rc);
    let norm_difference = pair.l1_difference();
    if (margin - norm_difference).abs() > REWRITE_TOL {
        return Err(Error::TheoremViolation(format!(
            "Rc·(B−A) = {margin} differs from ‖v‖₁−‖u‖₁ = {norm_difference}"
        )));
    }
    if margin < -VIOLATION_TOL {
        return Err(Error::TheoremViolation(format!("key inequality margin {margin} is negative")));
    }
    Ok(KeyInequality { margin, norm_difference, pair })
}

/// The canonical `B` carried back to the original rotation's frame.
pub fn constructive_b_facet(rec: &CanonicalizationRecord) -> IntMat3 {
    let group = CliffordGroup::get();
    let l = group.element(rec.left).matrix;
    let r = group.element(rec.right).matrix;
    // Rc·B = (C_l M C_r)·B = M·(C_lᵀ B C_rᵀ).
    let g = int_mul(&int_mul(&int_transpose(&l), &SEED_B), &int_transpose(&r));
    if rec.transposed {
        int_transpose(&g)
    } else {
        g
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DominanceRecord {
    pub max_a: f64,
    pub max_b: f64,
    pub gap: f64,
}

/// Exhaustive scan of all 48 A/AT and 72 B facets.
pub fn verify_global_dominance(r: &Rotation3) -> DominanceRecord {
    let set = FacetSet::get();
    let m = r.as_mat();
    let max_a = set.a_type().map(|f| m.dot_int(&f.matrix)).fold(f64::NEG_INFINITY, f64::max);
    let max_b = max_b_value(m);
    DominanceRecord { max_a, max_b, gap: max_b - max_a }
}

#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct NormLemmaStats {
    pub samples: u64,
    pub violations: u64,
    /// Smallest `‖v‖₁ − ‖u‖₁` seen, after ordering each pair so `‖u‖_∞ ≥ ‖v‖_∞`.
    pub min_margin: f64,
}

/// Equal-L² pairs of 2-vectors: the one with the larger L∞ norm never has
/// the larger L1 norm.
pub fn verify_norm_lemma(samples: u64, seed: u64) -> NormLemmaStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = NormLemmaStats { samples, violations: 0, min_margin: f64::INFINITY };
    for _ in 0..samples {
        let radius: f64 = rng.random_range(0.0..2.0);
        let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let b: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let p = [radius * a.cos(), radius * a.sin()];
        let q = [radius * b.cos(), radius * b.sin()];
        let (u, v) = if linf(&p) >= linf(&q) { (p, q) } else { (q, p) };
        let margin = norm_lemma_margin(&u, &v);
        stats.min_margin = stats.min_margin.min(margin);
        if margin < -1e-12 {
            stats.violations += 1;
        }
    }
    stats
}

/// `‖v‖₁ − ‖u‖₁` for a pair with `‖u‖_∞ ≥ ‖v‖_∞`.
pub fn norm_lemma_margin(u: &[f64; 2], v: &[f64; 2]) -> f64 {
    l1(v) - l1(u)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SampleSource {
    Haar,
    Stress,
}

impl SampleSource {
    pub fn name(self) -> &'static str {
        match self {
            SampleSource::Haar => "haar",
            SampleSource::Stress => "stress",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub source: SampleSource,
    pub index: u64,
    pub check: &'static str,
    pub value: f64,
    pub detail: String,
}

/// Every per-rotation check, aggregated.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSummary {
    pub count: u64,
    pub min_gap: f64,
    pub min_margin: f64,
    pub histogram: [u64; 4],
    pub no_match: u64,
    pub violations: Vec<Violation>,
}

impl SampleSummary {
    fn empty() -> Self {
        SampleSummary {
            count: 0,
            min_gap: f64::INFINITY,
            min_margin: f64::INFINITY,
            histogram: [0; 4],
            no_match: 0,
            violations: Vec::new(),
        }
    }

    fn merge(mut self, other: SampleSummary) -> Self {
        self.count += other.count;
        self.min_gap = self.min_gap.min(other.min_gap);
        self.min_margin = self.min_margin.min(other.min_margin);
        for k in 0..4 {
            self.histogram[k] += other.histogram[k];
        }
        self.no_match += other.no_match;
        self.violations.extend(other.violations);
        self
    }
}

/// Runs the whole chain of checks on one rotation.
pub fn check_rotation(r: &Rotation3, source: SampleSource, index: u64, out: &mut SampleSummary) {
    let mut flag = |check: &'static str, value: f64, detail: String| {
        out.violations.push(Violation { source, index, check, value, detail })
    };
    out.count += 1;

    let dom = verify_global_dominance(r);
    out.min_gap = out.min_gap.min(dom.gap);
    if dom.gap < -VIOLATION_TOL {
        flag("global_dominance", dom.gap, format!("max A {} exceeds max B {}", dom.max_a, dom.max_b));
    }

    let m = r.as_mat();
    let det_identity = m[(0, 1)] + (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)]);
    if det_identity.abs() > VIOLATION_TOL {
        flag("cofactor_identity", det_identity, "R12 != -(R21 R33 - R23 R31)".into());
    }

    let rec = match canonicalize(r) {
        Ok(rec) => rec,
        Err(e) => {
            flag("canonicalize", f64::NAN, e.to_string());
            return;
        }
    };
    let rc = rec.canonical_rotation;
    let rcm = rc.as_mat();
    if (0..3).any(|i| rcm[(i, 0)] < -CANON_TOL) || rcm[(0, 1)] > CANON_TOL {
        flag("canonical_signs", rcm[(0, 1)], format!("{:?}", rcm.0));
    }
    let r12 = rcm[(0, 1)].abs();
    let outside_max = (0..3).flat_map(|i| (1..3).map(move |j| (i, j))).map(|ij| rcm[ij].abs()).fold(0.0, f64::max);
    if outside_max - r12 > VIOLATION_TOL {
        flag("r12_dominance", outside_max - r12, format!("{:?}", rcm.0));
    }

    match check_sign_pattern(&rc) {
        Some(k) => out.histogram[k - 1] += 1,
        None => {
            out.no_match += 1;
            flag("sign_pattern", f64::NAN, format!("{:?}", rcm.0));
        }
    }

    let pair = TwoVectorPair::from_canonical(&rc);
    if pair.l2_mismatch() > VIOLATION_TOL {
        flag("equal_l2", pair.l2_mismatch(), format!("{pair:?}"));
    }
    match verify_key_inequality(&rc) {
        Ok(k) => out.min_margin = out.min_margin.min(k.margin),
        Err(e) => {
            let margin = rcm.dot_int(&SEED_B) - rcm.dot_int(&SEED_A);
            out.min_margin = out.min_margin.min(margin);
            flag("key_inequality", margin, e.to_string());
        }
    }

    let b = constructive_b_facet(&rec);
    match FacetSet::get().find(&b) {
        Some(f) if f.kind == FacetKind::B => {
            let slack = m.dot_int(&b) - dom.max_a;
            if slack < -VIOLATION_TOL {
                flag("constructive_b", slack, format!("facet {} falls short of max A", f.id));
            }
        }
        _ => flag("constructive_b", f64::NAN, format!("{b:?} is not a B-type facet")),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub include_stress: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub samples: u64,
    pub stress_samples: u64,
    pub min_gap: f64,
    pub min_margin: f64,
    pub sign_pattern_histogram: [u64; 4],
    pub no_match: u64,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.no_match == 0
    }
}

/// Haar samples (and optionally the stress set) through [`check_rotation`].
/// Output is identical for any worker count.
pub fn run_verification(config: &VerifyConfig) -> Result<VerificationReport> {
    if config.samples == 0 || config.workers == 0 {
        return Err(Error::InvalidArgument("samples and workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {} workers: {e}", config.workers)))?;
    let chunks = config.samples.div_ceil(CHUNK);
    let (haar, stress) = pool.install(|| {
        let haar = (0..chunks)
            .into_par_iter()
            .map(|k| {
                let mut s = SampleSummary::empty();
                for (offset, r) in haar_chunk(config.seed, k, config.samples).iter().enumerate() {
                    check_rotation(r, SampleSource::Haar, k * CHUNK + offset as u64, &mut s);
                }
                s
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(SampleSummary::empty(), SampleSummary::merge);
        let stress = if config.include_stress {
            let set = stress_set();
            set.par_chunks(CHUNK as usize)
                .enumerate()
                .map(|(k, rs)| {
                    let mut s = SampleSummary::empty();
                    for (offset, r) in rs.iter().enumerate() {
                        check_rotation(r, SampleSource::Stress, k as u64 * CHUNK + offset as u64, &mut s);
                    }
                    s
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold(SampleSummary::empty(), SampleSummary::merge)
        } else {
            SampleSummary::empty()
        };
        (haar, stress)
    });
    let stress_samples = stress.count;
    let all = haar.merge(stress);
    Ok(VerificationReport {
        samples: config.samples,
        stress_samples,
        min_gap: all.min_gap,
        min_margin: all.min_margin,
        sign_pattern_histogram: all.histogram,
        no_match: all.no_match,
        violations: all.violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{haar_rotation, stress_set};
    use crate::so3::depolarize;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

    #[test]
    fn twelve_a_primes() {
        let aps = a_prime_matrices();
        assert_eq!(aps.len(), 12);
        assert_eq!(aps[0], A_PRIME_1);
        assert!(aps.contains(&[[1, 1, 0], [1, 0, 0], [1, 0, 0]]));
        assert!(aps.contains(&[[1, 0, 0], [1, 0, 0], [1, 0, 1]]));
        for ap in &aps {
            let extra: Vec<_> = (0..3).flat_map(|i| (1..3).map(move |j| (i, j))).filter(|&(i, j)| ap[i][j] != 0).collect();
            assert_eq!(extra.len(), 1);
            assert!((0..3).all(|i| ap[i][0] == 1));
        }
    }

    #[test]
    fn entrywise_test_matches_a_prime_values() {
        let aps = a_prime_matrices();
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let group = CliffordGroup::get();
        for _ in 0..300 {
            let r = haar_rotation(&mut rng);
            for c in group.elements().iter().step_by(5) {
                let rc = sandwich(&c.matrix, r.as_mat(), &group.element(7).matrix);
                let a1 = rc.dot_int(&A_PRIME_1);
                let gap = aps.iter().map(|ap| a1 - rc.dot_int(ap)).fold(f64::INFINITY, f64::min);
                if gap.abs() > 1e-12 {
                    assert_eq!(a_prime_1_is_max(&rc), gap > 0.0);
                }
            }
        }
    }

    #[test]
    fn near_vertex_ties_are_resolved_exactly() {
        for (k, r) in stress_set().iter().enumerate().skip(3 * 3600 + 24 * 13 * 24) {
            let rc = canonicalize(r).unwrap().canonical_rotation;
            let k_ineq = verify_key_inequality(&rc);
            assert!(k_ineq.is_ok(), "stress sample {k}: {k_ineq:?}");
        }
    }

    #[test]
    fn max_a_matches_facet_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..200 {
            let r = haar_rotation(&mut rng);
            let scan = FacetSet::get().a_type().map(|f| r.as_mat().dot_int(&f.matrix)).fold(f64::MIN, f64::max);
            assert!((scan - max_a_value(r.as_mat())).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_examples() {
        let rec = canonicalize(&Rotation3::identity()).unwrap();
        assert_eq!(rec, canonicalize(&Rotation3::identity()).unwrap());
        let k = verify_key_inequality(&rec.canonical_rotation).unwrap();
        assert!(k.margin.abs() < 1e-15);
        let d = verify_global_dominance(&Rotation3::identity());
        assert_eq!((d.max_a, d.max_b, d.gap), (1.0, 1.0, 0.0));
    }

    #[test]
    fn pi_over_eight_examples() {
        let r = Rotation3::about_axis([0.0, 0.0, 1.0], FRAC_PI_4).unwrap();
        let d = verify_global_dominance(&r);
        assert!((d.max_a - SQRT_2).abs() < 1e-12);
        assert!((d.max_b - (2.0 * SQRT_2 - 1.0)).abs() < 1e-12);
        assert!((d.gap - (SQRT_2 - 1.0)).abs() < 1e-12);
        let rec = canonicalize(&r).unwrap();
        assert!(verify_key_inequality(&rec.canonical_rotation).unwrap().margin > 0.0);
    }

    #[test]
    fn wildcard_sign_matching() {
        // Canonical form of a rotation about x: the zero entries are wildcards.
        let rc = Rotation3::new(Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])).unwrap();
        assert!(check_sign_pattern(&rc).is_some());
        let bad = Rotation3::new(Mat3([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]])).unwrap();
        assert_eq!(check_sign_pattern(&bad), None);
    }

    #[test]
    fn norm_lemma_examples() {
        let u = [1.0, 0.0];
        let v = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
        assert!(linf(&u) >= linf(&v));
        assert!((norm_lemma_margin(&u, &v) - (SQRT_2 - 1.0)).abs() < 1e-15);
        assert_eq!(norm_lemma_margin(&v, &v), 0.0);
        let stats = verify_norm_lemma(10_000, 1);
        assert_eq!(stats.violations, 0);
        assert!(stats.min_margin >= -1e-12);
    }

    #[test]
    fn random_rotations_pass_every_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut s = SampleSummary::empty();
        for k in 0..2000 {
            check_rotation(&haar_rotation(&mut rng), SampleSource::Haar, k, &mut s);
        }
        assert!(s.violations.is_empty(), "{:?}", &s.violations[..s.violations.len().min(3)]);
        assert_eq!(s.histogram.iter().sum::<u64>(), 2000);
        assert!(s.min_gap >= -VIOLATION_TOL);
    }

    #[test]
    fn canonical_record_reproduces_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let group = CliffordGroup::get();
        for _ in 0..200 {
            let r = haar_rotation(&mut rng);
            let rec = canonicalize(&r).unwrap();
            let m = if rec.transposed { r.transpose() } else { r };
            let expected = group.element(rec.left).as_mat3() * *m.as_mat() * group.element(rec.right).as_mat3();
            assert!(expected.max_abs_diff(rec.canonical_rotation.as_mat()) < 1e-15);
            let b = constructive_b_facet(&rec);
            assert!((r.as_mat().dot_int(&b) - rec.canonical_rotation.as_mat().dot_int(&SEED_B)).abs() < 1e-12);
        }
    }

    #[test]
    fn scaling_corollary() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for p in [0.0, 0.25, 0.45] {
            for _ in 0..500 {
                let r = haar_rotation(&mut rng);
                let m = depolarize(&r, p).unwrap();
                let b = constructive_b_facet(&canonicalize(&r).unwrap());
                if max_a_value(&m) > 1.0 {
                    assert!(m.dot_int(&b) > 1.0 - 1e-12);
                }
            }
        }
    }

    #[test]
    fn run_is_independent_of_workers() {
        let base = VerifyConfig { samples: 5000, seed: 9, workers: 1, include_stress: false };
        let one = run_verification(&base).unwrap();
        let four = run_verification(&VerifyConfig { workers: 4, ..base }).unwrap();
        assert_eq!(one, four);
        assert!(one.passed());
        assert!(run_verification(&VerifyConfig { samples: 0, ..base }).is_err());
    }
}
