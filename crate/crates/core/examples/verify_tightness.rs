//! Check, on Haar-random rotations, that every A-facet violation comes with
//! a B-facet violation at least as large.
//!
//! `cargo run --release --example verify_tightness -- 1000000 4`

use clifford_polytope::verify::{canonicalize, verify_key_inequality};
use clifford_polytope::{run_verification, Rotation3, VerifyConfig};

fn main() -> clifford_polytope::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let workers = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    // One rotation, step by step.
    let r = Rotation3::about_axis([1.0, 2.0, 2.0], 0.8)?;
    let rec = canonicalize(&r)?;
    let key = verify_key_inequality(&rec.canonical_rotation)?;
    println!("canonical form via C{} . R{} . C{}:", rec.left, if rec.transposed { "^T" } else { "" }, rec.right);
    println!("{}", rec.canonical_rotation.as_mat());
    println!("u = {:?}, v = {:?}, margin {:.6}", key.pair.u, key.pair.v, key.margin);

    let rep = run_verification(&VerifyConfig { samples, seed: 1, workers, include_stress: true })?;
    println!(
        "{} random + {} stress rotations: min gap {:.3e}, min margin {:.3e}, patterns {:?}, violations {}",
        rep.samples,
        rep.stress_samples,
        rep.min_gap,
        rep.min_margin,
        rep.sign_pattern_histogram,
        rep.violations.len()
    );
    Ok(())
}
