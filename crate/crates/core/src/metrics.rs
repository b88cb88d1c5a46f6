//! In-radii, thickness and width-related bounds.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::enclosing::{exact_meb, jung_bound};
use crate::error::{GeomError, Result};
use crate::point::Point;
use crate::simplex::{checked_sqrt, regular_simplex, Simplex};

/// Condition numbers above this are reported alongside the incenter.
pub const INCENTER_CONDITION_WARN: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub barycentric_inradius: f64,
    pub barycentric_inradius_face: usize,
    pub barycentric_inradius_estimate: f64,
    pub barycentric_inradius_estimate_face: usize,
    /// Largest gap between the edge-length and coordinate routes to `|b - c_i|`.
    pub estimate_crosscheck_residual: f64,
    pub thickness: f64,
    pub thickness_estimate: f64,
    pub exact_inradius: Option<f64>,
    pub exact_incenter: Option<Point>,
    pub diam: f64,
    pub shor: f64,
}

/// Euclidean distance from `p` to the convex hull of `vertices`.
///
/// The unconstrained projection onto the affine hull is computed first; if
/// its barycentric coordinates are all nonnegative it is the answer.
/// Otherwise the constrained minimizer lies on a facet opposite one of the
/// vertices with a negative coordinate, and those facets are searched
/// recursively.
pub fn distance_to_hull(p: &Point, vertices: &[Point]) -> Result<f64> {
    Ok(closest_point_on_hull(p, vertices)?.1)
}

/// Closest point of the convex hull of `vertices` to `p`, and its distance.
pub fn closest_point_on_hull(p: &Point, vertices: &[Point]) -> Result<(Point, f64)> {
    if vertices.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    if vertices.len() > 64 {
        return Err(GeomError::InvalidArgument(
            "at most 64 vertices supported".into(),
        ));
    }
    for v in vertices {
        if v.dim() != p.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: p.dim(),
                found: v.dim(),
            });
        }
    }
    let full: u64 = if vertices.len() == 64 {
        u64::MAX
    } else {
        (1u64 << vertices.len()) - 1
    };
    let mut memo = HashMap::new();
    let (closest, d2) = hull_search(p, vertices, full, &mut memo);
    Ok((Point::from_vec_unchecked(closest), d2.max(0.0).sqrt()))
}

/// Distance from `p` to a face given as a simplex.
pub fn distance_point_to_face(p: &Point, face: &Simplex) -> Result<f64> {
    distance_to_hull(p, face.vertices())
}

type Memo = HashMap<u64, (Vec<f64>, f64)>;

fn hull_search(p: &Point, vertices: &[Point], mask: u64, memo: &mut Memo) -> (Vec<f64>, f64) {
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let active: Vec<usize> = (0..vertices.len())
        .filter(|&k| mask >> k & 1 == 1)
        .collect();
    let result = match affine_projection(p, vertices, &active) {
        Some((point, weights)) if weights.iter().all(|&w| w >= 0.0) => {
            let d2 = p
                .coords()
                .iter()
                .zip(&point)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            (point, d2)
        }
        projection => {
            // Facets to try: those opposite negative weights, or every facet
            // when the affine system could not be solved.
            let candidates: Vec<usize> = match &projection {
                Some((_, weights)) => active
                    .iter()
                    .zip(weights)
                    .filter(|(_, &w)| w < 0.0)
                    .map(|(&k, _)| k)
                    .collect(),
                None => active.clone(),
            };
            let mut best = (Vec::new(), f64::INFINITY);
            for k in candidates {
                let sub = hull_search(p, vertices, mask & !(1u64 << k), memo);
                if sub.1 < best.1 {
                    best = sub;
                }
            }
            best
        }
    };
    memo.insert(mask, result.clone());
    result
}

/// Projection of `p` onto the affine hull of `vertices[active]`, returned with
/// its affine weights. `None` when the active vertices are affinely dependent.
fn affine_projection(
    p: &Point,
    vertices: &[Point],
    active: &[usize],
) -> Option<(Vec<f64>, Vec<f64>)> {
    let origin = &vertices[active[0]];
    if active.len() == 1 {
        return Some((origin.coords().to_vec(), vec![1.0]));
    }
    let q = active.len() - 1;
    let n = p.dim();
    let e = DMatrix::from_fn(n, q, |r, c| {
        vertices[active[c + 1]].coords()[r] - origin.coords()[r]
    });
    let target = DVector::from_fn(n, |r, _| p.coords()[r] - origin.coords()[r]);
    let gram = e.transpose() * &e;
    let mu = gram.cholesky()?.solve(&(e.transpose() * target));
    let point: Vec<f64> = (0..n)
        .map(|r| origin.coords()[r] + (0..q).map(|c| e[(r, c)] * mu[c]).sum::<f64>())
        .collect();
    let mut weights = Vec::with_capacity(active.len());
    weights.push(1.0 - mu.sum());
    weights.extend(mu.iter());
    Some((point, weights))
}

/// Distance from the barycenter to the boundary: the minimum over facets of
/// the distance from the barycenter to the facet. Ties go to the smallest facet index.
pub fn barycentric_inradius(s: &Simplex) -> (f64, usize) {
    let b = s.barycenter();
    let mut best = (f64::INFINITY, 0);
    for i in 0..=s.m() {
        let d = distance_to_hull(&b, &s.opposite_vertices(i))
            .expect("facet vertices share the simplex dimension");
        if d < best.0 {
            best = (d, i);
        }
    }
    best
}

/// `min_i |b - c_i|` with each term from edge lengths:
/// `|b - c_i| = sqrt(radicand_i) / (m (m+1))`.
pub fn barycentric_inradius_estimate(s: &Simplex) -> (f64, usize) {
    let profile = s.edge_profile();
    let m = s.m() as f64;
    let mut best = (f64::INFINITY, 0);
    for i in 0..=s.m() {
        let d = checked_sqrt(profile.vertex_radicand(i), profile.radicand_scale(i)).unwrap_or(0.0)
            / (m * (m + 1.0));
        if d < best.0 {
            best = (d, i);
        }
    }
    best
}

fn estimate_crosscheck(s: &Simplex) -> f64 {
    let profile = s.edge_profile();
    let m = s.m() as f64;
    let b = s.barycenter();
    (0..=s.m())
        .map(|i| {
            let formula = profile.vertex_radicand(i).max(0.0).sqrt() / (m * (m + 1.0));
            let direct = b.dist(&s.face_centroid(i).expect("index in range"));
            (formula - direct).abs()
        })
        .fold(0.0, f64::max)
}

/// `(beta_inr / diam, estimated beta_inr / diam)`.
pub fn thickness(s: &Simplex) -> (f64, f64) {
    let diam = s.edge_profile().diam;
    (
        barycentric_inradius(s).0 / diam,
        barycentric_inradius_estimate(s).0 / diam,
    )
}

/// Incenter and inradius of a full-dimensional simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Incenter {
    pub center: Point,
    pub radius: f64,
    /// 2-norm condition number of the (n+1)x(n+1) system.
    pub condition: f64,
}

impl Incenter {
    pub fn ill_conditioned(&self) -> bool {
        self.condition > INCENTER_CONDITION_WARN
    }
}

/// Solves `u_i . c - r = -h_i` for all n+1 facets, where `u_i` is the unit
/// inward normal of facet i and `u_i . x + h_i` its signed distance.
pub fn exact_inradius_fulldim(s: &Simplex) -> Result<Incenter> {
    let (m, n) = (s.m(), s.n());
    if m != n {
        return Err(GeomError::NotFullDimensional { m, n });
    }
    let origin = s.vertex(0);
    let a = DMatrix::from_fn(n, n, |r, c| {
        s.vertex(c + 1).coords()[r] - origin.coords()[r]
    });
    // Rows of A^{-1} are the gradients of the barycentric coordinates 1..n.
    let inv = a.try_inverse().ok_or(GeomError::Singular)?;
    let mut normals: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut offsets: Vec<f64> = Vec::with_capacity(n + 1);
    let o = DVector::from_column_slice(origin.coords());
    // lambda_k(x) = g_k . (x - v0) for k >= 1, lambda_0 = 1 - sum_k lambda_k.
    let g0: Vec<f64> = (0..n)
        .map(|c| -(0..n).map(|r| inv[(r, c)]).sum::<f64>())
        .collect();
    let g0_dot_o: f64 = g0.iter().zip(o.iter()).map(|(g, x)| g * x).sum();
    let grads: Vec<(Vec<f64>, f64)> = std::iter::once((g0, 1.0 - g0_dot_o))
        .chain((0..n).map(|k| {
            let g: Vec<f64> = (0..n).map(|c| inv[(k, c)]).collect();
            let h = -g.iter().zip(o.iter()).map(|(a, b)| a * b).sum::<f64>();
            (g, h)
        }))
        .collect();
    for (g, h) in grads {
        let len = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        normals.push(g.iter().map(|x| x / len).collect());
        offsets.push(h / len);
    }

    let sys = DMatrix::from_fn(
        n + 1,
        n + 1,
        |r, c| if c < n { normals[r][c] } else { -1.0 },
    );
    let rhs = DVector::from_fn(n + 1, |r, _| -offsets[r]);
    let sv = sys.singular_values();
    let condition = sv.max() / sv.min();
    let sol = sys.lu().solve(&rhs).ok_or(GeomError::Singular)?;
    let center =
        Point::new(sol.rows(0, n).iter().cloned().collect()).map_err(|_| GeomError::Singular)?;
    Ok(Incenter {
        center,
        radius: sol[n],
        condition,
    })
}

fn check_dim(n: usize) -> Result<()> {
    if n < 1 {
        Err(GeomError::InvalidDimension("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(GeomError::InvalidArgument(format!(
            "{name} = {v} must be positive"
        )))
    }
}

/// Width of the regular n-simplex with edge `diam`.
pub fn regular_width(n: usize, diam: f64) -> Result<f64> {
    check_dim(n)?;
    check_positive("diam", diam)?;
    let nf = n as f64;
    let unit = if n % 2 == 1 {
        (2.0 / (nf + 1.0)).sqrt()
    } else {
        (2.0 * (nf + 1.0)).sqrt() / (nf * (nf + 2.0)).sqrt()
    };
    Ok(unit * diam)
}

/// Largest vertex count accepted by [`simplex_width`].
pub const WIDTH_VERTEX_CAP: usize = 21;

/// Width of `s` within its affine hull.
///
/// The minimal slab of a simplex has a face on each of its two hyperplanes,
/// and those faces partition the vertex set. For each partition the slab
/// width is the distance between the affine hulls of the two faces, found
/// by least squares. The width is the minimum over all partitions.
pub fn simplex_width(s: &Simplex) -> Result<f64> {
    let count = s.m() + 1;
    if count > WIDTH_VERTEX_CAP {
        return Err(GeomError::CapExceeded {
            count,
            cap: WIDTH_VERTEX_CAP,
        });
    }
    let n = s.n();
    let mut best = f64::INFINITY;
    // Vertex 0 always sits in the first group, so each partition is seen once.
    for mask in 0u32..(1u32 << (count - 1)) - 1 {
        let first: Vec<usize> = std::iter::once(0)
            .chain((1..count).filter(|&k| mask >> (k - 1) & 1 == 1))
            .collect();
        let second: Vec<usize> = (1..count).filter(|&k| mask >> (k - 1) & 1 == 0).collect();
        let (a0, b0) = (s.vertex(first[0]), s.vertex(second[0]));
        let mut columns: Vec<Vec<f64>> = first[1..].iter().map(|&k| s.vertex(k).sub(a0)).collect();
        columns.extend(second[1..].iter().map(|&k| b0.sub(s.vertex(k))));
        let rhs = DVector::from_column_slice(&b0.sub(a0));
        let dist = if columns.is_empty() {
            rhs.norm()
        } else {
            let e = DMatrix::from_fn(n, columns.len(), |r, c| columns[c][r]);
            let x = e
                .clone()
                .svd(true, true)
                .solve(&rhs, f64::EPSILON)
                .map_err(|_| GeomError::Singular)?;
            (e * x - rhs).norm()
        };
        best = best.min(dist);
    }
    Ok(best)
}

/// Steinhagen's upper bound on the width of a convex body in R^n with inradius `inradius`.
pub fn steinhagen_bound(n: usize, inradius: f64) -> Result<f64> {
    check_dim(n)?;
    check_positive("inradius", inradius)?;
    let nf = n as f64;
    Ok(if n % 2 == 1 {
        2.0 * nf.sqrt() * inradius
    } else {
        2.0 * (nf + 1.0) / (nf + 2.0).sqrt() * inradius
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Relative slack (times the diameter) granted to each inequality.
const INEQUALITY_SLACK: f64 = 1e-10;

/// Evaluates the inradius/circumradius/diameter inequalities on a full-dimensional
/// simplex. Width-dependent entries are included only for regular simplices,
/// whose width is known in closed form.
pub fn eggleston_suite(s: &Simplex) -> Result<Vec<InequalityCheck>> {
    let incenter = exact_inradius_fulldim(s)?;
    let n = s.n();
    let profile = s.edge_profile();
    let diam = profile.diam;
    let rho_inr = incenter.radius;
    let rho_cir = exact_meb(s.vertices())?.radius;
    let slack = INEQUALITY_SLACK * diam;

    let check = |name: &str, lhs: f64, rhs: f64| InequalityCheck {
        name: name.to_string(),
        lhs,
        rhs,
        holds: lhs <= rhs + slack,
    };
    let mut out = vec![
        check("rho_inr <= rho_cir", rho_inr, rho_cir),
        check("diam <= 2 rho_cir", diam, 2.0 * rho_cir),
        check("rho_inr <= diam / 2", rho_inr, diam / 2.0),
        check("rho_cir <= jung(n) diam", rho_cir, jung_bound(diam, n)?),
    ];
    if s.require_regular().is_ok() {
        let wid = regular_width(n, diam)?;
        out.push(check("rho_inr <= wid / 2", rho_inr, wid / 2.0));
        out.push(check("wid <= diam", wid, diam));
        out.push(check("wid <= 2 rho_cir", wid, 2.0 * rho_cir));
        out.push(check(
            "wid <= steinhagen(n) rho_inr",
            wid,
            steinhagen_bound(n, rho_inr)?,
        ));
    }
    Ok(out)
}

/// `(sqrt(n(n+1)/2), diameter of the regular n-simplex whose barycentric inradius is 1/2)`,
/// the latter measured on a constructed simplex.
pub fn gale_diameter_check(n: usize) -> Result<(f64, f64)> {
    check_dim(n)?;
    let unit = regular_simplex(n, n, 1.0)?;
    let (inr, _) = barycentric_inradius(&unit);
    let scaled = regular_simplex(n, n, 1.0 / (2.0 * inr))?;
    let nf = n as f64;
    Ok(((nf * (nf + 1.0) / 2.0).sqrt(), scaled.edge_profile().diam))
}

pub fn metrics_report(s: &Simplex) -> MetricsReport {
    let profile = s.edge_profile();
    let (inr, inr_face) = barycentric_inradius(s);
    let (est, est_face) = barycentric_inradius_estimate(s);
    let incenter = if s.is_full_dimensional() {
        exact_inradius_fulldim(s).ok()
    } else {
        None
    };
    MetricsReport {
        barycentric_inradius: inr,
        barycentric_inradius_face: inr_face,
        barycentric_inradius_estimate: est,
        barycentric_inradius_estimate_face: est_face,
        estimate_crosscheck_residual: estimate_crosscheck(s),
        thickness: inr / profile.diam,
        thickness_estimate: est / profile.diam,
        exact_inradius: incenter.as_ref().map(|c| c.radius),
        exact_incenter: incenter.map(|c| c.center),
        diam: profile.diam,
        shor: profile.shor,
    }
}
