//! Tight depolarizing-noise thresholds.
//!
//! Depolarizing noise of rate `p` rescales a gate's rotation to `(1-p)R`, and
//! every facet value scales with it. If `v = max_F R·F` exceeds one, the
//! noisy gate enters the Clifford polytope exactly at `p* = 1 - 1/v`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::facets::{facet_inner_product, Facet, FacetKind, FacetSet};
use crate::so3::{rotation_from_angles, GateAngles, Mat3, Rotation3};

/// Facet values within this distance of the maximum count as ties.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub rotation: Rotation3,
    pub max_inner_product: f64,
    pub p_star: f64,
    pub witness: Facet,
}

impl ThresholdReport {
    pub fn witness_kind(&self) -> FacetKind {
        self.witness.kind
    }
}

/// Maximum facet value of `m` and the preferred witness: among facets tied
/// with the maximum, a B-type facet if there is one, then the lowest id.
pub fn max_facet_with_witness(m: &Mat3) -> (f64, Facet) {
    let facets = FacetSet::get().all();
    let values: Vec<f64> = facets.iter().map(|f| facet_inner_product(m, f)).collect();
    let v = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut tied = facets.iter().zip(&values).filter(|(_, &x)| x >= v - TIE_TOL).map(|(f, _)| f);
    let first = *tied.clone().next().expect("the maximum is attained");
    let witness = tied.find(|f| f.kind == FacetKind::B).copied().unwrap_or(first);
    (v, witness)
}

/// `p* = 1 - 1/v`, clamped to zero when `v ≤ 1 + TIE_TOL`.
pub fn p_star_from_value(v: f64) -> f64 {
    if v <= 1.0 + TIE_TOL {
        0.0
    } else {
        1.0 - 1.0 / v
    }
}

pub fn threshold(r: &Rotation3) -> ThresholdReport {
    let (v, witness) = max_facet_with_witness(r.as_mat());
    ThresholdReport { rotation: *r, max_inner_product: v, p_star: p_star_from_value(v), witness }
}

pub fn threshold_from_angles(angles: &GateAngles) -> Result<ThresholdReport> {
    Ok(threshold(&rotation_from_angles(angles)?))
}

/// Regular grid with `θ ∈ [0, π)` and `γ, δ ∈ [0, 2π)`, each axis split into
/// equal steps starting at zero. `θ ↦ θ + π` only flips the sign of `U`, so
/// the θ range covers every rotation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SurveyGrid {
    pub theta_steps: usize,
    pub gamma_steps: usize,
    pub delta_steps: usize,
}

impl SurveyGrid {
    pub fn new(theta_steps: usize, gamma_steps: usize, delta_steps: usize) -> Result<Self> {
        if theta_steps == 0 || gamma_steps == 0 || delta_steps == 0 {
            return Err(Error::InvalidArgument("survey grid needs at least one point per axis".into()));
        }
        Ok(SurveyGrid { theta_steps, gamma_steps, delta_steps })
    }

    pub fn cube(n: usize) -> Result<Self> {
        SurveyGrid::new(n, n, n)
    }

    pub fn len(&self) -> usize {
        self.theta_steps * self.gamma_steps * self.delta_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major point: θ varies slowest, δ fastest.
    pub fn point(&self, k: usize) -> GateAngles {
        let d = k % self.delta_steps;
        let g = (k / self.delta_steps) % self.gamma_steps;
        let t = k / (self.delta_steps * self.gamma_steps);
        GateAngles {
            theta: PI * t as f64 / self.theta_steps as f64,
            gamma: 2.0 * PI * g as f64 / self.gamma_steps as f64,
            delta: 2.0 * PI * d as f64 / self.delta_steps as f64,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SurveyRecord {
    pub angles: GateAngles,
    pub report: ThresholdReport,
}

/// Evaluates the grid in parallel and hands records to `sink` in grid order.
/// At most `chunk` records are held in memory at once.
pub fn threshold_survey_streaming<E, F>(grid: &SurveyGrid, chunk: usize, mut sink: F) -> std::result::Result<(), E>
where
    F: FnMut(&SurveyRecord) -> std::result::Result<(), E>,
    E: From<Error>,
{
    let chunk = chunk.max(1);
    let mut start = 0;
    while start < grid.len() {
        let end = (start + chunk).min(grid.len());
        let records: Result<Vec<SurveyRecord>> = (start..end)
            .into_par_iter()
            .map(|k| {
                let angles = grid.point(k);
                Ok(SurveyRecord { angles, report: threshold_from_angles(&angles)? })
            })
            .collect();
        for r in &records? {
            sink(r)?;
        }
        start = end;
    }
    Ok(())
}

pub fn threshold_survey(grid: &SurveyGrid) -> Result<Vec<SurveyRecord>> {
    let mut out = Vec::with_capacity(grid.len());
    threshold_survey_streaming::<Error, _>(grid, 4096, |r| {
        out.push(*r);
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordGroup;
    use crate::facets::{polytope_membership, SEED_A};
    use crate::so3::depolarize;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

    fn brute_force_max(m: &Mat3) -> f64 {
        FacetSet::get().all().iter().map(|f| m.dot_int(&f.matrix)).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn cliffords_have_zero_threshold() {
        for c in CliffordGroup::get().elements() {
            let rep = threshold(&c.as_rotation());
            assert_eq!(rep.p_star, 0.0);
            assert_eq!(rep.max_inner_product, 1.0);
        }
    }

    #[test]
    fn pi_over_eight_gate() {
        let r = Rotation3::about_axis([0.0, 0.0, 1.0], FRAC_PI_4).unwrap();
        let rep = threshold(&r);
        let v = 2.0 * SQRT_2 - 1.0;
        assert!((rep.max_inner_product - v).abs() < 1e-12);
        assert!((rep.p_star - (1.0 - 1.0 / v)).abs() < 1e-12);
        assert_eq!(rep.witness_kind(), FacetKind::B);
        assert!((rep.p_star - 0.4531).abs() < 5e-5);

        // First-column sum, the canonical A value, is √2 and loses to B.
        let a_val = r.as_mat().dot_int(&SEED_A);
        assert!((a_val - SQRT_2).abs() < 1e-12);
        let a_max = FacetSet::get().a_type().map(|f| r.as_mat().dot_int(&f.matrix)).fold(f64::MIN, f64::max);
        assert!((a_max - SQRT_2).abs() < 1e-12);
        assert!(a_max < rep.max_inner_product);
    }

    #[test]
    fn angles_entry_point() {
        let rep = threshold_from_angles(&GateAngles::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(rep.p_star, 0.0);
        let pi8 = threshold_from_angles(&GateAngles::new(0.0, FRAC_PI_8, 0.0).unwrap()).unwrap();
        assert!((pi8.p_star - (1.0 - 1.0 / (2.0 * SQRT_2 - 1.0))).abs() < 1e-12);
        let pi16 = threshold_from_angles(&GateAngles::new(0.0, FRAC_PI_8 / 2.0, 0.0).unwrap()).unwrap();
        assert!(pi16.p_star > 0.0 && pi16.p_star < pi8.p_star);
        // Exhaustive scan agrees.
        assert_eq!(pi16.max_inner_product, brute_force_max(pi16.rotation.as_mat()));
    }

    #[test]
    fn tie_prefers_b() {
        // Identity: A-type, AT-type and B-type facets all reach 1.
        let rep = threshold(&Rotation3::identity());
        assert_eq!(rep.witness_kind(), FacetKind::B);
        let lowest_b = FacetSet::get()
            .of_kind(FacetKind::B)
            .find(|f| Mat3::IDENTITY.dot_int(&f.matrix) == 1.0)
            .unwrap();
        assert_eq!(rep.witness.id, lowest_b.id);
    }

    #[test]
    fn bracketing() {
        let r = Rotation3::about_axis([1.0, 2.0, 0.5], 0.9).unwrap();
        let rep = threshold(&r);
        assert!(rep.p_star > 0.01);
        assert!(polytope_membership(&depolarize(&r, rep.p_star + 1e-6).unwrap()).is_inside());
        assert!(!polytope_membership(&depolarize(&r, rep.p_star - 1e-6).unwrap()).is_inside());
    }

    #[test]
    fn clamp() {
        assert_eq!(p_star_from_value(0.5), 0.0);
        assert_eq!(p_star_from_value(1.0 + 1e-13), 0.0);
        assert!((p_star_from_value(2.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn survey_single_point() {
        let grid = SurveyGrid::cube(1).unwrap();
        let recs = threshold_survey(&grid).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].angles, GateAngles { theta: 0.0, gamma: 0.0, delta: 0.0 });
        assert_eq!(recs[0].report.p_star, 0.0);
        assert!(SurveyGrid::new(0, 1, 1).is_err());
    }

    #[test]
    fn survey_order_and_range() {
        let grid = SurveyGrid::new(3, 4, 5).unwrap();
        let recs = threshold_survey(&grid).unwrap();
        assert_eq!(recs.len(), 60);
        for (k, r) in recs.iter().enumerate() {
            assert_eq!(r.angles, grid.point(k));
            assert!((0.0..1.0).contains(&r.report.p_star));
        }
        assert_eq!(grid.point(5 + 1), GateAngles { theta: 0.0, gamma: PI / 2.0, delta: 2.0 * PI / 5.0 });
        // Chunk size does not change the output.
        let mut small = Vec::new();
        threshold_survey_streaming::<Error, _>(&grid, 7, |r| {
            small.push(*r);
            Ok(())
        })
        .unwrap();
        assert_eq!(small, recs);
    }
}
