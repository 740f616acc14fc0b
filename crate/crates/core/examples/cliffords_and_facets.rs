//! The 24 Clifford rotations and the 120 facets they cut out.

use clifford_polytope::facets::{vertices_per_facet, FacetKind, FacetSet};
use clifford_polytope::CliffordGroup;

fn main() {
    let group = CliffordGroup::get();
    for c in group.elements() {
        println!("C{:<2} {:?}  inverse C{}", c.index, c.matrix, group.inverse(c.index));
    }

    let facets = FacetSet::get();
    for kind in [FacetKind::A, FacetKind::AT, FacetKind::B] {
        let first = facets.of_kind(kind).next().unwrap();
        println!("{kind}: {} facets, e.g. #{} {:?}", facets.of_kind(kind).count(), first.id, first.matrix);
    }

    // Each facet is tight on some vertices; how many is a diagnostic, not an input.
    let counts = vertices_per_facet();
    let a_count = counts[facets.a_type().next().unwrap().id];
    let b_count = counts[facets.of_kind(FacetKind::B).next().unwrap().id];
    println!("vertices on an A facet: {a_count}, on a B facet: {b_count}");
}
