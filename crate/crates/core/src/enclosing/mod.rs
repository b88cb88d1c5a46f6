//! Enclosing balls of simplices and finite point sets.
//!
//! The barycentric circumradius is the radius of the smallest ball centered
//! at the barycenter that contains the simplex. It is computed from edge
//! lengths and compared against Jung's diameter bound and the exact minimum
//! enclosing ball.

mod meb;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

pub use meb::{exact_meb, Ball};

use crate::error::{GeomError, Result};
use crate::point::Point;
use crate::simplex::{RankScale, Simplex};

/// Largest point count accepted by the subset-enumerating operations.
pub const ENUMERATION_CAP: usize = 15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosureReport {
    pub barycentric_circumradius: f64,
    /// Jung bound on the simplex diameter in its own affine hull (dimension m).
    pub jung_bound: f64,
    pub combined_bound: f64,
    pub meb_radius: f64,
    pub meb_center: Point,
    pub barycenter: Point,
    pub argmax_vertex: usize,
}

/// Barycentric circumradius from edge lengths, with the vertex that attains it.
///
/// `(1/(m+1)) * max_i sqrt(m * sum_{j != i} d_ij^2 - sum_{p<q; p,q != i} d_pq^2)`;
/// ties go to the smallest index.
pub fn barycentric_circumradius(s: &Simplex) -> (f64, usize) {
    let profile = s.edge_profile();
    let scale = (s.m() + 1) as f64;
    let mut best = (f64::NEG_INFINITY, 0);
    for i in 0..=s.m() {
        let value = profile.vertex_radicand(i).max(0.0).sqrt() / scale;
        if value > best.0 {
            best = (value, i);
        }
    }
    best
}

/// `max_i |b - v_i|` straight from coordinates.
pub fn barycentric_circumradius_direct(s: &Simplex) -> f64 {
    let b = s.barycenter();
    s.vertices().iter().map(|v| b.dist(v)).fold(0.0, f64::max)
}

/// Jung's bound `sqrt(n / (2n + 2)) * diam` on the circumradius of any set in R^n.
pub fn jung_bound(diam: f64, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(GeomError::InvalidDimension("n must be at least 1".into()));
    }
    if !(diam > 0.0 && diam.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "diam = {diam} must be positive"
        )));
    }
    let n = n as f64;
    Ok((n / (2.0 * n + 2.0)).sqrt() * diam)
}

/// Barycentric circumradius of the regular m-simplex with edge `diam`.
pub fn regular_circumradius(m: usize, diam: f64) -> Result<f64> {
    // Same closed form as Jung's constant.
    jung_bound(diam, m).map_err(|e| match e {
        GeomError::InvalidDimension(_) => {
            GeomError::InvalidDimension("m must be at least 1".into())
        }
        other => other,
    })
}

pub fn combined_enclosure(s: &Simplex) -> EnclosureReport {
    let (barycentric_circumradius, argmax_vertex) = barycentric_circumradius(s);
    let profile = s.edge_profile();
    let jung = jung_bound(profile.diam, s.m()).expect("valid simplex has positive diameter");
    let ball = exact_meb(s.vertices()).expect("simplex vertices share one dimension");
    EnclosureReport {
        barycentric_circumradius,
        jung_bound: jung,
        combined_bound: barycentric_circumradius.min(jung),
        meb_radius: ball.radius,
        meb_center: ball.center,
        barycenter: s.barycenter(),
        argmax_vertex,
    }
}

/// Largest pairwise distance of a point set.
pub fn set_diameter(points: &[Point]) -> f64 {
    points
        .iter()
        .tuple_combinations()
        .map(|(a, b)| a.dist(b))
        .fold(0.0, f64::max)
}

fn check_point_set(points: &[Point], n: usize) -> Result<()> {
    if n < 1 {
        return Err(GeomError::InvalidDimension("n must be at least 1".into()));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != n) {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    if points.len() < n + 1 {
        return Err(GeomError::TooFewPoints {
            needed: n + 1,
            got: points.len(),
        });
    }
    if points.len() > ENUMERATION_CAP {
        return Err(GeomError::CapExceeded {
            count: points.len(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// Supremum of the barycentric circumradii over all n-simplices spanned by
/// (n+1)-subsets of `points`. Degenerate subsets are skipped.
pub fn set_barycentric_circumradius(points: &[Point], n: usize) -> Result<f64> {
    check_point_set(points, n)?;
    let mut best: Option<f64> = None;
    for subset in points.iter().cloned().combinations(n + 1) {
        let Ok(s) = Simplex::with_rank_scale(subset, RankScale::Floored) else {
            continue;
        };
        let (r, _) = barycentric_circumradius(&s);
        best = Some(best.map_or(r, |b: f64| b.max(r)));
    }
    best.ok_or(GeomError::AllDegenerate { size: n + 1 })
}

/// `(max over (n+1)-subsets of the subset's MEB radius, MEB radius of the whole set)`.
pub fn blumenthal_wahlin_check(points: &[Point], n: usize) -> Result<(f64, f64)> {
    check_point_set(points, n)?;
    let mut subset_max: f64 = 0.0;
    for subset in points.iter().cloned().combinations(n + 1) {
        subset_max = subset_max.max(exact_meb(&subset)?.radius);
    }
    Ok((subset_max, exact_meb(points)?.radius))
}

/// `(sum_i |b - v_i|, sqrt(m(m+1)/2) * diam)` for a regular simplex.
pub fn fermat_sum_regular(s: &Simplex) -> Result<(f64, f64)> {
    let profile = s.require_regular()?;
    let b = s.barycenter();
    let sum = s.vertices().iter().map(|v| b.dist(v)).sum();
    let m = s.m() as f64;
    Ok((sum, (m * (m + 1.0) / 2.0).sqrt() * profile.diam))
}
