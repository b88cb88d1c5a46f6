//! Seeded random simplices and point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::Point;
use crate::simplex::Simplex;

/// Deterministic generator used by the corpus command, tests and benches.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize, range: f64) -> Point {
    Point::from_vec_unchecked((0..n).map(|_| rng.random_range(-range..=range)).collect())
}

pub fn random_points<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    n: usize,
    range: f64,
) -> Vec<Point> {
    (0..count).map(|_| random_point(rng, n, range)).collect()
}

/// A random valid m-simplex of R^n with coordinates in `[-range, range]`.
/// Degenerate draws are rejected and redrawn.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, range: f64) -> Simplex {
    assert!(n >= m && m >= 1, "need n >= m >= 1");
    loop {
        if let Ok(s) = Simplex::new(random_points(rng, m + 1, n, range)) {
            return s;
        }
    }
}
