//! Dense phase-one simplex for small feasibility problems `A x = b, x ≥ 0`.
//!
//! Uses a full tableau with one artificial variable per row and Bland's
//! smallest-index rule for both the entering and the leaving variable, so the
//! method terminates on degenerate problems.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_PIVOTS: usize = 10_000;

/// Reduced costs above `-COST_TOL` count as nonnegative.
const COST_TOL: f64 = 1e-12;
/// Smallest admissible pivot element.
const PIVOT_TOL: f64 = 1e-9;
/// Ratios within this distance are ties, broken by basic-variable index.
const RATIO_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseOne {
    /// Values of the original variables at the final basis.
    pub x: Vec<f64>,
    /// Sum of artificial variables at the optimum; zero iff feasible.
    pub objective: f64,
    pub pivots: usize,
}

/// Minimizes the total infeasibility of `a x = b` over `x ≥ 0`.
pub fn phase_one(a: &[Vec<f64>], b: &[f64], max_pivots: usize) -> Result<PhaseOne> {
    let rows = a.len();
    if rows != b.len() {
        return Err(Error::InvalidArgument(format!("{} constraint rows but {} right-hand sides", rows, b.len())));
    }
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("ragged constraint matrix".into()));
    }
    let width = n + rows;

    // Tableau rows: [original | artificial | rhs], each row scaled so rhs ≥ 0.
    let mut t: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, &rhs))| {
            let s = if rhs < 0.0 { -1.0 } else { 1.0 };
            let mut r: Vec<f64> = row.iter().map(|v| s * v).collect();
            r.extend((0..rows).map(|k| if k == i { 1.0 } else { 0.0 }));
            r.push(s * rhs);
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();

    // Reduced costs for min Σ artificials with the artificial basis.
    let mut cost = vec![0.0; width + 1];
    for j in 0..=width {
        if (n..width).contains(&j) {
            continue;
        }
        cost[j] = -t.iter().map(|r| r[j]).sum::<f64>();
    }

    let mut pivots = 0;
    while let Some(enter) = (0..width).find(|&j| cost[j] < -COST_TOL) {
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter] <= PIVOT_TOL {
                continue;
            }
            let ratio = row[width] / row[enter];
            leave = match leave {
                None => Some((i, ratio)),
                Some((k, best)) => {
                    if ratio < best - RATIO_TOL || (ratio <= best + RATIO_TOL && basis[i] < basis[k]) {
                        Some((i, ratio))
                    } else {
                        Some((k, best))
                    }
                }
            };
        }
        let Some((pr, _)) = leave else {
            // Phase one is bounded below by zero, so an unbounded column means
            // the reduced cost was numerical noise. Drop it from consideration.
            cost[enter] = 0.0;
            continue;
        };
        if pivots == max_pivots {
            return Err(Error::SolverFailure { pivots });
        }
        pivot(&mut t, &mut cost, pr, enter);
        basis[pr] = enter;
        pivots += 1;
    }

    let mut x = vec![0.0; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][width];
        }
    }
    Ok(PhaseOne { x, objective: -cost[width], pivots })
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], pr: usize, pc: usize) {
    let p = t[pr][pc];
    for v in t[pr].iter_mut() {
        *v /= p;
    }
    let prow = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr {
            continue;
        }
        let f = row[pc];
        if f != 0.0 {
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
            row[pc] = 0.0;
        }
    }
    let f = cost[pc];
    if f != 0.0 {
        for (v, pv) in cost.iter_mut().zip(&prow) {
            *v -= f * pv;
        }
        cost[pc] = 0.0;
    }
}
