//! Shared fixtures for the criterion benches.

use simplexkit::corpus::{random_points, random_simplex, rng};
use simplexkit::{Point, Simplex};

/// `count` seeded random m-simplices of R^n.
pub fn simplices(seed: u64, count: usize, m: usize, n: usize) -> Vec<Simplex> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_simplex(&mut r, m, n, 10.0))
        .collect()
}

pub fn point_cloud(seed: u64, count: usize, n: usize) -> Vec<Point> {
    random_points(&mut rng(seed), count, n, 10.0)
}
