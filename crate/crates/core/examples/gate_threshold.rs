//! Tight depolarizing thresholds for a few single-qubit gates.
//!
//! Run with `cargo run --example gate_threshold`.

use std::f64::consts::PI;

use clifford_polytope::{threshold_from_angles, GateAngles};

fn main() -> clifford_polytope::Result<()> {
    let gates = [
        ("identity", GateAngles::new(0.0, 0.0, 0.0)?),
        ("pi/8 phase", GateAngles::new(0.0, PI / 8.0, 0.0)?),
        ("pi/16 phase", GateAngles::new(0.0, PI / 16.0, 0.0)?),
        ("theta=0.15, gamma=delta=pi/2", GateAngles::new(0.15, PI / 2.0, PI / 2.0)?),
        ("generic", GateAngles::new(0.7, 0.4, 1.9)?),
    ];
    for (name, angles) in gates {
        let rep = threshold_from_angles(&angles)?;
        println!(
            "{name:>28}: max R.F = {:.6}  p* = {:.6}  witness {} #{}",
            rep.max_inner_product,
            rep.p_star,
            rep.witness_kind(),
            rep.witness.id
        );
    }
    // The pi/8 gate has a closed form.
    println!("1 - 1/(2*sqrt(2) - 1) = {:.6}", 1.0 - 1.0 / (2.0 * 2f64.sqrt() - 1.0));
    Ok(())
}
