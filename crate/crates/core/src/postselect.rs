//! Bell-pair postselection: apply a gate to one half of `(|00⟩+|11⟩)/√2`,
//! measure a weight-two Pauli `σ_a⊗σ_b`, keep one outcome, and read off the
//! single-qubit state left behind.
//!
//! The kept state lives in the two-dimensional eigenspace of
//! `S = ±σ_a⊗σ_b`. We read it in a fixed logical frame
//!
//! ```text
//! X_L = I ⊗ σ_b
//! Z_L = -σ_prev(a) ⊗ σ_next(b)        (X → Y → Z → X cyclic)
//! Y_L = i · X_L · Z_L
//! ```
//!
//! which for `S = YX` gives `X_L = IX`, `Y_L = XZ`, `Z_L = -XY`, reproducing
//! the closed form implemented by [`postselect_formula_yx`]. A Clifford
//! decoder mapping `S ↦ I⊗Z` and the logical operators onto the first qubit
//! turns the kept state into `ρ' ⊗ |0⟩⟨0|`; [`PostselectionResult::factorization_residual`]
//! measures how far the two-qubit expectations are from that product form.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::facets::{Facet, FacetKind, FacetSet};
use crate::pauli::{self, Mat4c, Pauli, Pauli2};
use crate::so3::{bell_density_matrix, coefficients_of_state, Mat3, PauliCoefficients, Unitary2};

pub const EPS_PROB: f64 = 1e-12;
pub const EPS_OCTAHEDRON: f64 = 1e-12;

/// A weight-two Pauli measurement `first ⊗ second`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoQubitPauli {
    first: Pauli,
    second: Pauli,
}

impl TwoQubitPauli {
    pub fn new(first: Pauli, second: Pauli) -> Result<Self> {
        if first == Pauli::I || second == Pauli::I {
            return Err(Error::InvalidArgument(format!("measurement {first}{second} must have weight two")));
        }
        Ok(TwoQubitPauli { first, second })
    }

    pub fn all() -> impl Iterator<Item = TwoQubitPauli> {
        Pauli::AXES.into_iter().flat_map(|a| Pauli::AXES.into_iter().map(move |b| TwoQubitPauli { first: a, second: b }))
    }

    pub fn first(&self) -> Pauli {
        self.first
    }

    pub fn second(&self) -> Pauli {
        self.second
    }

    pub fn as_pauli2(&self) -> Pauli2 {
        Pauli2::new(self.first, self.second)
    }
}

impl FromStr for TwoQubitPauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse measurement {s:?}, expected e.g. YX"));
        let mut chars = s.trim().chars();
        let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) else { return Err(bad()) };
        TwoQubitPauli::new(Pauli::parse(a).ok_or_else(bad)?, Pauli::parse(b).ok_or_else(bad)?)
    }
}

impl fmt::Display for TwoQubitPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first, self.second)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Outcome {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Outcome::Plus),
            "-1" | "-" => Ok(Outcome::Minus),
            other => Err(Error::InvalidArgument(format!("outcome must be +1 or -1, got {other:?}"))),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn l1_norm(&self) -> f64 {
        self.x.abs() + self.y.abs() + self.z.abs()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// The single-qubit Pauli `p` acting as a π rotation about its axis.
    pub fn apply_pauli(&self, p: Pauli) -> BlochVector {
        let [sx, sy, sz] = pauli_rotation_signs(p);
        BlochVector::new(sx * self.x, sy * self.y, sz * self.z)
    }
}

fn pauli_rotation_signs(p: Pauli) -> [f64; 3] {
    match p {
        Pauli::I => [1.0, 1.0, 1.0],
        Pauli::X => [1.0, -1.0, -1.0],
        Pauli::Y => [-1.0, 1.0, -1.0],
        Pauli::Z => [-1.0, -1.0, 1.0],
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Octahedron {
    Inside,
    Outside,
}

/// Outside iff `|x| + |y| + |z| > 1`; the boundary counts as inside.
pub fn octahedron_membership(r: &BlochVector) -> Octahedron {
    if r.l1_norm() > 1.0 + EPS_OCTAHEDRON {
        Octahedron::Outside
    } else {
        Octahedron::Inside
    }
}

/// Stabilizer and logical operators of the kept eigenspace.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LogicalFrame {
    pub stabilizer: Pauli2,
    pub x: Pauli2,
    pub y: Pauli2,
    pub z: Pauli2,
}

impl LogicalFrame {
    pub fn new(meas: TwoQubitPauli, outcome: Outcome) -> Self {
        let mut stabilizer = meas.as_pauli2();
        if outcome == Outcome::Minus {
            stabilizer = stabilizer.negate();
        }
        let x = Pauli2::new(Pauli::I, meas.second);
        let z = Pauli2::new(meas.first.prev(), meas.second.next()).negate();
        let y = (x * z).times_i();
        LogicalFrame { stabilizer, x, y, z }
    }

    pub fn logicals(&self) -> [Pauli2; 3] {
        [self.x, self.y, self.z]
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PostselectionResult {
    pub bloch: BlochVector,
    pub accept_probability: f64,
    /// Largest deviation of the kept state's sixteen Pauli expectations from
    /// the product `ρ' ⊗ (stabilizer state)`. Only computed by the density-matrix route.
    pub factorization_residual: Option<f64>,
}

pub fn postselect_oracle(u: &Unitary2, meas: TwoQubitPauli, outcome: Outcome) -> Result<PostselectionResult> {
    postselect_state(&bell_density_matrix(u), meas, outcome)
}

/// Like [`postselect_oracle`], with depolarizing noise of rate `p` on the gate.
pub fn postselect_oracle_noisy(
    u: &Unitary2,
    p: f64,
    meas: TwoQubitPauli,
    outcome: Outcome,
) -> Result<PostselectionResult> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("noise rate must lie in [0, 1], got {p}")));
    }
    let mut rho = bell_density_matrix(u);
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z *= 1.0 - p;
            if i == j {
                *z += p / 4.0;
            }
        }
    }
    postselect_state(&rho, meas, outcome)
}

/// Projects a two-qubit density matrix onto one outcome and reads the
/// logical Bloch vector.
pub fn postselect_state(rho: &Mat4c, meas: TwoQubitPauli, outcome: Outcome) -> Result<PostselectionResult> {
    let frame = LogicalFrame::new(meas, outcome);
    let mut proj = pauli::mat4_identity();
    let s = frame.stabilizer.matrix();
    for i in 0..4 {
        for j in 0..4 {
            proj[i][j] = (proj[i][j] + s[i][j]) * 0.5;
        }
    }
    let q = pauli::mat4_trace_product(&proj, rho).re;
    if q <= EPS_PROB {
        return Err(Error::ZeroProbabilityBranch { probability: q });
    }
    let mut kept = pauli::mat4_mul(&pauli::mat4_mul(&proj, rho), &proj);
    for z in kept.iter_mut().flatten() {
        *z /= C64::new(q, 0.0);
    }
    let c = coefficients_of_state(&kept)?;
    let [x, y, z] = frame.logicals().map(|l| c.expectation(l));
    let bloch = BlochVector::new(x, y, z);
    Ok(PostselectionResult {
        bloch,
        accept_probability: q,
        factorization_residual: Some(factorization_residual(&c, &frame, &bloch)),
    })
}

fn factorization_residual(c: &PauliCoefficients, frame: &LogicalFrame, r: &BlochVector) -> f64 {
    let identity = Pauli2::new(Pauli::I, Pauli::I);
    let logical = [(identity, 1.0), (frame.x, r.x), (frame.y, r.y), (frame.z, r.z)];
    let mut worst: f64 = 0.0;
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            let p = Pauli2::new(a, b);
            let predicted = if !p.commutes_with(frame.stabilizer) {
                0.0
            } else {
                logical
                    .iter()
                    .flat_map(|&(l, v)| [(l, v), (l * frame.stabilizer, v)])
                    .find(|(l, _)| l.first == a && l.second == b)
                    .map(|(l, v)| l.real_sign().expect("Hermitian") * v)
                    .expect("commuting Paulis lie in the logical group")
            };
            worst = worst.max((c.get(a, b) - predicted).abs());
        }
    }
    worst
}

/// Postselection computed from a coefficient table instead of a density matrix.
pub fn postselect_coefficients(
    c: &PauliCoefficients,
    meas: TwoQubitPauli,
    outcome: Outcome,
) -> Result<PostselectionResult> {
    let frame = LogicalFrame::new(meas, outcome);
    let den = 1.0 + c.expectation(frame.stabilizer);
    if den / 2.0 <= EPS_PROB {
        return Err(Error::ZeroProbabilityBranch { probability: den / 2.0 });
    }
    let [x, y, z] =
        frame.logicals().map(|l| (c.expectation(l) + c.expectation(frame.stabilizer * l)) / den);
    Ok(PostselectionResult {
        bloch: BlochVector::new(x, y, z),
        accept_probability: den / 2.0,
        factorization_residual: None,
    })
}

/// Postselection for a unital gate given by its 3×3 block (a rotation or `(1-p)R`).
pub fn postselect_matrix(m: &Mat3, meas: TwoQubitPauli, outcome: Outcome) -> Result<PostselectionResult> {
    postselect_coefficients(&PauliCoefficients::from_matrix(m), meas, outcome)
}

/// Closed form for the `YX`, `+1` branch:
/// `r = (0, (c_XZ - c_ZY)/(c_II + c_YX), -(c_XY + c_ZZ)/(c_II + c_YX))`.
pub fn postselect_formula_yx(m: &Mat3) -> Result<BlochVector> {
    use Pauli::*;
    let c = PauliCoefficients::from_matrix(m);
    let den = c.get(I, I) + c.get(Y, X);
    if den <= EPS_PROB {
        return Err(Error::ZeroProbabilityBranch { probability: den / 2.0 });
    }
    Ok(BlochVector::new(0.0, (c.get(X, Z) - c.get(Z, Y)) / den, -(c.get(X, Y) + c.get(Z, Z)) / den))
}

/// The postselection that certifies one B-type facet: measure `meas`, keep
/// `outcome`, then apply the Pauli `correction` to the Bloch vector.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FacetMeasurement {
    pub facet_id: usize,
    pub meas: TwoQubitPauli,
    pub outcome: Outcome,
    pub correction: Pauli,
}

/// The integer facet whose inequality `m·G > 1` is equivalent to the corrected
/// Bloch vector crossing the octahedron face `x + y + z = 1`.
///
/// Derivation: `(1,1,1)·(P r) > 1` with `r_k = (⟨L_k⟩ + ⟨S L_k⟩)/(1 + ⟨S⟩)`
/// becomes `Σ_k w_k(⟨L_k⟩ + ⟨S L_k⟩) - ⟨S⟩ > 1`, and each two-qubit expectation
/// is one signed entry of `m`. Single-qubit expectations vanish for unital
/// Bell-pair channels and drop out.
pub fn induced_facet(meas: TwoQubitPauli, outcome: Outcome, correction: Pauli) -> [[i32; 3]; 3] {
    let frame = LogicalFrame::new(meas, outcome);
    let w = pauli_rotation_signs(correction);
    let mut g = [[0i32; 3]; 3];
    let mut add = |p: Pauli2, weight: i32| {
        if p.first == Pauli::I || p.second == Pauli::I {
            assert!(p.first != p.second, "identity term in a facet functional");
            return;
        }
        let sign = p.real_sign().expect("Hermitian") as i32;
        // c_ij sits at row j, column i, with the Y column negated.
        let col_sign = if p.first == Pauli::Y { -1 } else { 1 };
        g[p.second.index() - 1][p.first.index() - 1] += weight * sign * col_sign;
    };
    for (l, wk) in frame.logicals().into_iter().zip(w) {
        add(l, wk as i32);
        add(frame.stabilizer * l, wk as i32);
    }
    add(frame.stabilizer, -1);
    g
}

static FACET_TABLE: OnceLock<std::result::Result<Vec<FacetMeasurement>, Error>> = OnceLock::new();

/// Measurement, outcome and correction for each B-type facet, indexed by facet id.
/// Non-B ids hold no entry.
pub fn facet_measurement_table() -> Result<&'static [FacetMeasurement]> {
    FACET_TABLE.get_or_init(build_facet_table).as_deref().map_err(Clone::clone)
}

fn build_facet_table() -> std::result::Result<Vec<FacetMeasurement>, Error> {
    let set = FacetSet::get();
    let mut found: Vec<Option<FacetMeasurement>> = vec![None; set.all().len()];
    for meas in TwoQubitPauli::all() {
        for outcome in [Outcome::Plus, Outcome::Minus] {
            for correction in Pauli::ALL {
                let g = induced_facet(meas, outcome, correction);
                let facet = set.find(&g).filter(|f| f.kind == FacetKind::B).ok_or_else(|| {
                    Error::InternalConsistency(format!("{meas}/{outcome}/{correction} induces non-facet {g:?}"))
                })?;
                if found[facet.id].is_some() {
                    return Err(Error::InternalConsistency(format!("facet {} matched twice", facet.id)));
                }
                found[facet.id] = Some(FacetMeasurement { facet_id: facet.id, meas, outcome, correction });
            }
        }
    }
    let table: Vec<FacetMeasurement> = found.into_iter().flatten().collect();
    if table.len() != 72 {
        return Err(Error::InternalConsistency(format!("matched {} of 72 B-type facets", table.len())));
    }
    Ok(table)
}

pub fn measurement_for_facet(b: &Facet) -> Result<FacetMeasurement> {
    if b.kind != FacetKind::B {
        return Err(Error::InvalidArgument(format!("facet {} is {}-type, not B-type", b.id, b.kind)));
    }
    facet_measurement_table()?
        .iter()
        .find(|fm| fm.facet_id == b.id)
        .copied()
        .ok_or_else(|| Error::InternalConsistency(format!("no measurement for facet {}", b.id)))
}

/// Both sides of "`m` violates facet `b`" ⇔ "the corrected postselected
/// state lies beyond an octahedron face".
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EquivalenceRecord {
    pub measurement: FacetMeasurement,
    pub facet_value: f64,
    pub accept_probability: f64,
    /// Postselected Bloch vector after the Pauli correction.
    pub corrected: BlochVector,
    /// `x + y + z` of the corrected vector: the octahedron face in the positive octant.
    pub face_value: f64,
    pub l1_norm: f64,
}

impl EquivalenceRecord {
    pub fn facet_violated(&self) -> bool {
        self.facet_value > 1.0
    }

    pub fn face_crossed(&self) -> bool {
        self.face_value > 1.0
    }

    pub fn outside_octahedron(&self) -> bool {
        octahedron_membership(&self.corrected) == Octahedron::Outside
    }
}

pub fn facet_violation_equivalence(m: &Mat3, b: &Facet) -> Result<EquivalenceRecord> {
    let fm = measurement_for_facet(b)?;
    let post = postselect_matrix(m, fm.meas, fm.outcome)?;
    let corrected = post.bloch.apply_pauli(fm.correction);
    Ok(EquivalenceRecord {
        measurement: fm,
        facet_value: m.dot_int(&b.matrix),
        accept_probability: post.accept_probability,
        corrected,
        face_value: corrected.x + corrected.y + corrected.z,
        l1_norm: corrected.l1_norm(),
    })
}

/// The B-type facets sharing a measurement and outcome (the four corrections).
pub fn sibling_facets(meas: TwoQubitPauli, outcome: Outcome) -> Result<Vec<Facet>> {
    let set = FacetSet::get();
    Ok(facet_measurement_table()?
        .iter()
        .filter(|fm| fm.meas == meas && fm.outcome == outcome)
        .map(|fm| set.all()[fm.facet_id])
        .collect())
}
