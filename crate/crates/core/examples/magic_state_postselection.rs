//! Apply a gate to half a Bell pair, measure a two-qubit Pauli and read off
//! the heralded single-qubit state. Facet violations show up as states
//! outside the stabilizer octahedron.

use std::f64::consts::PI;

use clifford_polytope::postselect::{
    facet_violation_equivalence, octahedron_membership, postselect_oracle_noisy, Outcome, TwoQubitPauli,
};
use clifford_polytope::so3::{rotation_from_unitary, unitary_from_angles};
use clifford_polytope::{FacetKind, FacetSet, GateAngles};

fn main() -> clifford_polytope::Result<()> {
    let u = unitary_from_angles(&GateAngles::new(0.0, PI / 8.0, 0.0)?)?;
    let r = rotation_from_unitary(&u)?;
    let best = FacetSet::get()
        .of_kind(FacetKind::B)
        .filter_map(|b| facet_violation_equivalence(r.as_mat(), b).ok())
        .max_by(|a, b| a.facet_value.total_cmp(&b.facet_value))
        .unwrap();
    let m = best.measurement;
    println!(
        "largest B facet #{} (value {:.4}) <- measure {}, keep {}, correct with {}",
        m.facet_id, best.facet_value, m.meas, m.outcome, m.correction
    );

    // Noise shrinks the heralded state back into the octahedron at p*.
    for p in [0.0, 0.3, 0.45, 0.46, 0.6] {
        let post = postselect_oracle_noisy(&u, p, m.meas, m.outcome)?;
        let r = post.bloch.apply_pauli(m.correction);
        println!(
            "p = {p:.2}: r = [{:+.4}, {:+.4}, {:+.4}] with probability {:.4}, |r|_1 = {:.4} ({:?})",
            r.x,
            r.y,
            r.z,
            post.accept_probability,
            r.l1_norm(),
            octahedron_membership(&r)
        );
    }

    // The identity heralds a stabilizer state on the octahedron boundary.
    let yx: TwoQubitPauli = "YX".parse()?;
    let id = postselect_oracle_noisy(&unitary_from_angles(&GateAngles::new(0.0, 0.0, 0.0)?)?, 0.0, yx, Outcome::Plus)?;
    println!("identity, YX/+1: r = {:?}", id.bloch.to_array());
    Ok(())
}
