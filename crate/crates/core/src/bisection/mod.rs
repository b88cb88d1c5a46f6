//! Longest-edge bisection of simplices and the diameter/error bounds that
//! govern it.
//!
//! Bisecting `[v0, ..., vm]` with longest edge `{vi, vj}` (i < j) and midpoint
//! `M` yields the lower child (vi replaced by M) and the upper child (vj
//! replaced by M). After p bisections the diameter is at most
//! `(sqrt 3 / 2)^floor(p/m)` times the initial one.

mod registry;
mod solver;

use serde::{Deserialize, Serialize};

pub use registry::{lookup, registry_names, FnSystem, SystemFunction};
pub use solver::{solve, BisectionStep, BisectionTrace, ChildChoice};

use crate::error::{GeomError, Result};
use crate::simplex::{checked_sqrt, RankScale, Simplex};

const KEARFOTT_FACTOR: f64 = 0.866_025_403_784_438_6; // sqrt(3) / 2

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Child {
    Lower,
    Upper,
}

/// Splits `s` at the midpoint of its longest edge into `(lower, upper)`.
///
/// Children are rank-checked relative to their own size so deep bisection
/// chains are not flagged by an absolute floor.
pub fn bisect(s: &Simplex) -> Result<(Simplex, Simplex)> {
    let (i, j) = s.edge_profile().diam_edge;
    let mid = s.vertex(i).midpoint(s.vertex(j));
    let mut lower = s.vertices().to_vec();
    lower[i] = mid.clone();
    let mut upper = s.vertices().to_vec();
    upper[j] = mid;
    Ok((
        Simplex::with_rank_scale(lower, RankScale::Relative)?,
        Simplex::with_rank_scale(upper, RankScale::Relative)?,
    ))
}

fn check_bound_args(m: usize, diam0: f64) -> Result<()> {
    if m < 1 {
        return Err(GeomError::InvalidDimension("m must be at least 1".into()));
    }
    if !(diam0 > 0.0 && diam0.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "diam0 = {diam0} must be positive"
        )));
    }
    Ok(())
}

/// `(sqrt 3 / 2)^floor(p/m) * diam0`, the diameter bound after `p` bisections.
pub fn kearfott_bound(p: usize, m: usize, diam0: f64) -> Result<f64> {
    check_bound_args(m, diam0)?;
    let exponent = (p / m) as i32;
    Ok(KEARFOTT_FACTOR.powi(exponent) * diam0)
}

/// `(m/(m+1)) * kearfott_bound(p, m, diam0)`: bound on `|x - b|` for any point
/// `x` of the simplex selected after `p` bisections, `b` its barycenter.
pub fn containment_bound(p: usize, m: usize, diam0: f64) -> Result<f64> {
    let mf = m as f64;
    Ok(mf / (mf + 1.0) * kearfott_bound(p, m, diam0)?)
}

/// `(m/(m+1)) * sqrt(diam^2 - ((m-1)/(2m)) * shor^2)`.
///
/// Dominates the distance from the barycenter to every point of the simplex.
pub fn error_estimate(s: &Simplex) -> Result<f64> {
    let profile = s.edge_profile();
    error_estimate_from(s.m(), profile.diam, profile.shor)
}

pub(crate) fn error_estimate_from(m: usize, diam: f64, shor: f64) -> Result<f64> {
    let mf = m as f64;
    let radicand = diam * diam - (mf - 1.0) / (2.0 * mf) * shor * shor;
    Ok(mf / (mf + 1.0) * checked_sqrt(radicand, diam * diam)?)
}
