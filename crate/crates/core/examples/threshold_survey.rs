//! Coarse survey of thresholds over the (theta, gamma, delta) parameter cube.

use clifford_polytope::threshold::threshold_survey;
use clifford_polytope::SurveyGrid;

fn main() -> clifford_polytope::Result<()> {
    let grid = SurveyGrid::cube(12)?;
    let records = threshold_survey(&grid)?;

    let worst = records.iter().max_by(|a, b| a.report.p_star.total_cmp(&b.report.p_star)).unwrap();
    let zero = records.iter().filter(|r| r.report.p_star == 0.0).count();
    let mean = records.iter().map(|r| r.report.p_star).sum::<f64>() / records.len() as f64;
    println!("{} grid points, {zero} with p* = 0, mean p* {mean:.4}", records.len());
    println!(
        "largest p* = {:.6} at theta={:.4} gamma={:.4} delta={:.4}",
        worst.report.p_star, worst.angles.theta, worst.angles.gamma, worst.angles.delta
    );

    let mut histogram = [0usize; 10];
    for r in &records {
        histogram[((r.report.p_star * 20.0) as usize).min(9)] += 1;
    }
    for (k, n) in histogram.iter().enumerate() {
        println!("p* in [{:.2}, {:.2}): {n}", k as f64 / 20.0, (k + 1) as f64 / 20.0);
    }
    Ok(())
}
