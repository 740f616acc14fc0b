//! Constructive membership: write a matrix as a convex combination of the 24
//! Clifford vertices, or prove that no such combination exists.

use crate::clifford::CliffordGroup;
use crate::error::Result;
use crate::facets::{polytope_membership, Membership};
use crate::simplex::{phase_one, DEFAULT_MAX_PIVOTS};
use crate::so3::Mat3;

/// Constraint residual (phase-one objective) accepted as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-8;
/// Margin around `max_F m·F = 1` inside which disagreements are not failures.
pub const BOUNDARY_BAND: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexWeights {
    /// Indexed by Clifford element index.
    pub weights: [f64; 24],
    /// Largest entrywise deviation of `Σ wᵢ Cᵢ` from the target.
    pub reconstruction_error: f64,
}

impl ConvexWeights {
    pub fn reconstruct(&self) -> Mat3 {
        CliffordGroup::get()
            .elements()
            .iter()
            .zip(&self.weights)
            .fold(Mat3::ZERO, |acc, (c, &w)| acc + c.as_mat3().scale(w))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    Feasible(ConvexWeights),
    Infeasible { residual: f64 },
}

impl Decomposition {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decomposition::Feasible(_))
    }
}

pub fn decompose(m: &Mat3) -> Result<Decomposition> {
    decompose_with_cap(m, DEFAULT_MAX_PIVOTS)
}

pub fn decompose_with_cap(m: &Mat3, max_pivots: usize) -> Result<Decomposition> {
    let group = CliffordGroup::get();
    // One row per matrix entry plus normalization.
    let mut a: Vec<Vec<f64>> = (0..9)
        .map(|e| group.elements().iter().map(|c| f64::from(c.matrix[e / 3][e % 3])).collect())
        .collect();
    a.push(vec![1.0; 24]);
    let mut b: Vec<f64> = m.row_major().to_vec();
    b.push(1.0);

    let sol = phase_one(&a, &b, max_pivots)?;
    if sol.objective > FEASIBILITY_TOL {
        return Ok(Decomposition::Infeasible { residual: sol.objective });
    }
    let mut weights = [0.0; 24];
    for (w, x) in weights.iter_mut().zip(&sol.x) {
        *w = x.max(0.0);
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut cw = ConvexWeights { weights, reconstruction_error: 0.0 };
    cw.reconstruction_error = cw.reconstruct().max_abs_diff(m);
    if cw.reconstruction_error > FEASIBILITY_TOL {
        return Ok(Decomposition::Infeasible { residual: cw.reconstruction_error });
    }
    Ok(Decomposition::Feasible(cw))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Agreement {
    AgreeInside,
    AgreeOutside,
    /// The two tests disagree within `BOUNDARY_BAND` of the boundary.
    BoundaryAmbiguous,
    Disagree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub agreement: Agreement,
    pub membership: Membership,
    pub decomposition: Decomposition,
}

/// Runs the facet test and the LP and compares their verdicts.
pub fn membership_cross_check(m: &Mat3) -> Result<CrossCheck> {
    let membership = polytope_membership(m);
    let decomposition = decompose(m)?;
    let agreement = match (membership.is_inside(), decomposition.is_feasible()) {
        (true, true) => Agreement::AgreeInside,
        (false, false) => Agreement::AgreeOutside,
        _ if (membership.max_inner_product() - 1.0).abs() < BOUNDARY_BAND => Agreement::BoundaryAmbiguous,
        _ => Agreement::Disagree,
    };
    Ok(CrossCheck { agreement, membership, decomposition })
}
