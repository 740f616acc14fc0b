//! Facet test versus explicit convex decomposition into Clifford vertices.

use std::f64::consts::FRAC_PI_4;

use clifford_polytope::decompose::{membership_cross_check, Decomposition};
use clifford_polytope::{depolarize, CliffordGroup, Rotation3};

fn main() -> clifford_polytope::Result<()> {
    let t = Rotation3::about_axis([0.0, 0.0, 1.0], FRAC_PI_4)?;
    for p in [0.0, 0.40, 0.46, 0.75] {
        let m = depolarize(&t, p)?;
        let check = membership_cross_check(&m)?;
        print!("p = {p:.2}: {:?}, max facet value {:.6}", check.agreement, check.membership.max_inner_product());
        match check.decomposition {
            Decomposition::Feasible(w) => {
                let used: Vec<String> = w
                    .weights
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 1e-9)
                    .map(|(i, x)| format!("{x:.3}*C{i}"))
                    .collect();
                println!("  = {}", used.join(" + "));
            }
            Decomposition::Infeasible { residual } => println!("  (LP residual {residual:.3e})"),
        }
    }
    let c = CliffordGroup::get().element(5).as_mat3();
    println!("vertex C5 decomposes: {:?}", membership_cross_check(&c)?.agreement);
    Ok(())
}
