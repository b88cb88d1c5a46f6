//! Exact minimum enclosing ball by the move-to-front variant of Welzl's
//! randomized incremental algorithm.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::point::Point;

const SHUFFLE_SEED: u64 = 0x5eed_ba11;

/// Relative slack when testing whether a point already lies in the current ball.
const CONTAINMENT_SLACK: f64 = 1e-12;

/// Smallest ball enclosing a finite point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    /// Indices (into the input) of the points on the boundary that determine the ball.
    pub support: Vec<usize>,
    /// Affine weights of `center` with respect to `support`; all nonnegative
    /// at an optimum (the center lies in the hull of its support).
    pub support_weights: Vec<f64>,
}

impl Ball {
    /// Most negative support weight, or 0 when all are nonnegative.
    pub fn hull_violation(&self) -> f64 {
        self.support_weights.iter().cloned().fold(0.0, f64::min)
    }

    /// Largest `|x - center| - radius` over `points`.
    pub fn max_excess(&self, points: &[Point]) -> f64 {
        points
            .iter()
            .map(|p| p.dist(&self.center) - self.radius)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Circumscribed ball of a support set within its own affine hull.
struct SupportBall {
    center: Vec<f64>,
    radius2: f64,
    weights: Vec<f64>,
}

fn support_ball(points: &[&[f64]], dim: usize) -> Option<SupportBall> {
    match points.len() {
        0 => Some(SupportBall {
            center: vec![0.0; dim],
            radius2: -1.0,
            weights: vec![],
        }),
        1 => Some(SupportBall {
            center: points[0].to_vec(),
            radius2: 0.0,
            weights: vec![1.0],
        }),
        2 => {
            let center: Vec<f64> = points[0]
                .iter()
                .zip(points[1])
                .map(|(a, b)| 0.5 * (a + b))
                .collect();
            let radius2 = points[0]
                .iter()
                .zip(&center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            Some(SupportBall {
                center,
                radius2,
                weights: vec![0.5, 0.5],
            })
        }
        k => {
            let origin = points[0];
            let diffs: Vec<Vec<f64>> = points[1..]
                .iter()
                .map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect())
                .collect();
            let q = k - 1;
            let dots = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
            let gram = DMatrix::from_fn(q, q, |r, c| 2.0 * dots(&diffs[r], &diffs[c]));
            let rhs = DVector::from_fn(q, |r, _| dots(&diffs[r], &diffs[r]));
            let mu = gram.cholesky()?.solve(&rhs);
            let mut center = origin.to_vec();
            for (d, coef) in diffs.iter().zip(mu.iter()) {
                center.iter_mut().zip(d).for_each(|(c, x)| *c += coef * x);
            }
            let mut weights = Vec::with_capacity(k);
            weights.push(1.0 - mu.iter().sum::<f64>());
            weights.extend(mu.iter());
            let radius2 = points
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&center)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                })
                .fold(0.0, f64::max);
            Some(SupportBall {
                center,
                radius2,
                weights,
            })
        }
    }
}

/// True when `candidate` is affinely independent of `support` (relative test).
fn extends_affinely(support: &[&[f64]], candidate: &[f64]) -> bool {
    if support.is_empty() {
        return true;
    }
    let origin = support[0];
    let rows = support.len();
    let dim = origin.len();
    if rows > dim {
        return false;
    }
    let m = DMatrix::from_fn(rows, dim, |r, c| {
        let p = if r + 1 < rows {
            support[r + 1]
        } else {
            candidate
        };
        p[c] - origin[c]
    });
    let sv = m.singular_values();
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    smallest > 1e-10 * largest
}

struct Solver<'a> {
    points: &'a [Point],
    order: Vec<usize>,
    dim: usize,
}

impl Solver<'_> {
    fn contains(ball: &SupportBall, p: &[f64]) -> bool {
        let d2: f64 = p
            .iter()
            .zip(&ball.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        d2 <= ball.radius2 * (1.0 + CONTAINMENT_SLACK) + f64::MIN_POSITIVE
    }

    fn coords(&self, idx: &[usize]) -> Vec<&[f64]> {
        idx.iter().map(|&i| self.points[i].coords()).collect()
    }

    /// Smallest ball of `order[..end]` with every point of `support` on its boundary.
    fn mtf(&mut self, end: usize, support: &mut Vec<usize>) -> (SupportBall, Vec<usize>) {
        let mut ball = support_ball(&self.coords(support), self.dim)
            .expect("support set is kept affinely independent");
        let mut best_support = support.clone();
        if support.len() == self.dim + 1 {
            return (ball, best_support);
        }
        for pos in 0..end {
            let idx = self.order[pos];
            let p = self.points[idx].coords();
            if Self::contains(&ball, p) {
                continue;
            }
            if !extends_affinely(&self.coords(support), p) {
                // Numerically on the hull of the current support; the final
                // radius is taken over all points, so coverage is kept.
                continue;
            }
            support.push(idx);
            let (next, next_support) = self.mtf(pos, support);
            support.pop();
            ball = next;
            best_support = next_support;
            self.order.remove(pos);
            self.order.insert(0, idx);
        }
        (ball, best_support)
    }
}

/// The unique smallest ball enclosing `points`.
pub fn exact_meb(points: &[Point]) -> Result<Ball> {
    let first = points.first().ok_or(GeomError::EmptyInput)?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(SHUFFLE_SEED));
    let mut solver = Solver { points, order, dim };
    let end = points.len();
    let (ball, support) = solver.mtf(end, &mut Vec::new());

    let center = Point::new(ball.center).map_err(|_| GeomError::Singular)?;
    let radius = points.iter().map(|p| p.dist(&center)).fold(0.0, f64::max);
    Ok(Ball {
        center,
        radius,
        support,
        support_weights: ball.weights,
    })
}
