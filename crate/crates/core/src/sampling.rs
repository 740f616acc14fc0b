//! Reproducible rotation samples: Haar-random draws and a structured stress set.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::clifford::CliffordGroup;
use crate::so3::Rotation3;

/// Samples per RNG stream. Stream `k` covers samples `k·CHUNK .. (k+1)·CHUNK`,
/// so results do not depend on how streams are spread over workers.
pub const CHUNK: u64 = 4096;

/// Independent generator for stream `stream` of run `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform (Haar) rotation: a normalized Gaussian quaternion.
pub fn haar_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation3 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Ok(r) = Rotation3::from_quaternion(q) {
            return r;
        }
    }
}

/// Rotations from the `k`-th chunk of run `seed`, truncated at `total`.
pub fn haar_chunk(seed: u64, k: u64, total: u64) -> Vec<Rotation3> {
    let start = k * CHUNK;
    let end = (start + CHUNK).min(total);
    let mut rng = stream_rng(seed, k);
    (start..end).map(|_| haar_rotation(&mut rng)).collect()
}

fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

/// Degenerate and tie-heavy inputs:
/// - rotations about each coordinate axis on a 0.1° grid;
/// - z-y-z Euler compositions on a 15° grid;
/// - every Clifford vertex, exactly and perturbed by rotations of angle 1e-6.
pub fn stress_set() -> Vec<Rotation3> {
    let mut out = Vec::new();
    let axes = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for axis in axes {
        for k in 0..3600 {
            out.push(Rotation3::about_axis(axis, 2.0 * PI * k as f64 / 3600.0).expect("unit axis"));
        }
    }
    let step = PI / 12.0;
    for a in 0..24 {
        let za = Rotation3::about_axis(axes[2], step * a as f64).expect("unit axis");
        for b in 0..13 {
            let yb = Rotation3::about_axis(axes[1], step * b as f64).expect("unit axis");
            let zayb = za.compose(&yb);
            for c in 0..24 {
                let zc = Rotation3::about_axis(axes[2], step * c as f64).expect("unit axis");
                out.push(zayb.compose(&zc));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c11f);
    for c in CliffordGroup::get().elements() {
        let vertex = c.as_rotation();
        out.push(vertex);
        for _ in 0..40 {
            let wobble = Rotation3::about_axis(random_unit_vector(&mut rng), 1e-6).expect("unit axis");
            out.push(vertex.compose(&wobble));
        }
    }
    out
}
