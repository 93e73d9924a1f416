//! Seeded point sampling. Point `k` of a run with seed `s` is drawn from its
//! own ChaCha8 stream seeded with `s ^ k`, so results do not depend on the
//! order in which points are evaluated.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifier recorded in reports.
pub const SAMPLER_ID: &str = "chacha8-rand0.8/seed-xor-index/disk-polar-sqrt";

pub const DEFAULT_Z_RADIUS: f64 = 0.8;
pub const DEFAULT_XI_RADIUS: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    pub index: u64,
    pub z: Vec<Complex64>,
    pub xi: Complex64,
}

fn disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = 2.0 * PI * rng.gen::<f64>();
    Complex64::from_polar(r, theta)
}

/// Uniform point in the polydisk of radius `z_radius` with `|ξ| ≤ xi_radius`.
pub fn sample_point(
    seed: u64,
    index: u64,
    dim: usize,
    z_radius: f64,
    xi_radius: f64,
) -> SamplePoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index);
    let z = (0..dim).map(|_| disk(&mut rng, z_radius)).collect();
    let xi = disk(&mut rng, xi_radius);
    SamplePoint { index, z, xi }
}

/// Points `0..count` with the default radii.
pub fn sample_points(seed: u64, count: usize, dim: usize) -> Vec<SamplePoint> {
    (0..count as u64)
        .map(|k| sample_point(seed, k, dim, DEFAULT_Z_RADIUS, DEFAULT_XI_RADIUS))
        .collect()
}
