//! Median identities of m-simplices.
//!
//! For vertex `v_i` with opposite-face centroid `c_i` and barycenter `b`:
//!
//! ```text
//! m * sum_{j != i} |v_i - v_j|^2  =  sum_{p<q; p,q != i} |v_p - v_q|^2  +  m^2 |v_i - c_i|^2
//! |b - v_i| = m |b - c_i|
//! sum_i |v_i - c_i|^2 = ((m+1)/m^2) * sum_{p<q} |v_p - v_q|^2
//! sum_i |b - v_i|^2   = (1/(m+1))   * sum_{p<q} |v_p - v_q|^2
//! ```
//!
//! Every residual here compares the edge-length route against coordinates
//! computed directly from the vertices, never one route against itself.

use serde::{Deserialize, Serialize};

use crate::enclosing::barycentric_circumradius;
use crate::error::{GeomError, Result};
use crate::metrics::barycentric_inradius;
use crate::point::{dot, norm};
use crate::simplex::{checked_sqrt, Simplex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianReport {
    /// Median lengths from edge lengths only.
    pub median_lengths: Vec<f64>,
    /// Apollonius residuals, one per vertex.
    pub apollonius_residuals: Vec<f64>,
    /// `sum_i |v_i - c_i|^2` from coordinates.
    pub sum_squares_medians: f64,
    /// `sum_i |b - v_i|^2` from coordinates.
    pub sum_squares_center_to_vertices: f64,
    /// `sum_{p<q} |v_p - v_q|^2` from the edge profile.
    pub sum_squares_edges: f64,
    /// Relative residual of the median-sum identity.
    pub median_sum_residual: f64,
    /// Relative residual of the center-to-vertex-sum identity.
    pub center_sum_residual: f64,
}

/// Length of the i-th median from edge lengths alone.
pub fn median_length(s: &Simplex, i: usize) -> Result<f64> {
    s.check_index(i)?;
    let profile = s.edge_profile();
    let m = s.m() as f64;
    let root = checked_sqrt(profile.vertex_radicand(i), profile.radicand_scale(i))?;
    Ok(root / m)
}

/// `|v_i - c_i|` from coordinates.
pub fn median_length_direct(s: &Simplex, i: usize) -> Result<f64> {
    Ok(s.vertex(i).dist(&s.face_centroid(i)?))
}

/// Left side minus right side of the generalized Apollonius identity at vertex `i`,
/// with the median taken from coordinates.
pub fn apollonius_residual(s: &Simplex, i: usize) -> Result<f64> {
    s.check_index(i)?;
    let m = s.m() as f64;
    let v = s.vertices();
    let mut incident = 0.0;
    let mut opposite = 0.0;
    for p in 0..v.len() {
        for q in (p + 1)..v.len() {
            let d2 = v[p].dist2(&v[q]);
            if p == i || q == i {
                incident += d2;
            } else {
                opposite += d2;
            }
        }
    }
    let median2 = s.vertex(i).dist2(&s.face_centroid(i)?);
    Ok(m * incident - opposite - m * m * median2)
}

/// Segments of the i-th median cut by the barycenter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommandinoRatio {
    /// `|b - c_i|`
    pub center_to_face: f64,
    /// `|b - v_i|`
    pub center_to_vertex: f64,
    /// `|v_i - b| + |b - c_i| - |v_i - c_i|`; zero when `b` lies on the median.
    pub collinearity_residual: f64,
}

impl CommandinoRatio {
    /// `|b - v_i| - m |b - c_i|`.
    pub fn ratio_deviation(&self, m: usize) -> f64 {
        self.center_to_vertex - m as f64 * self.center_to_face
    }
}

pub fn commandino_ratio(s: &Simplex, i: usize) -> Result<CommandinoRatio> {
    let face = s.face_centroid(i)?;
    let b = s.barycenter();
    let v = s.vertex(i);
    let center_to_face = b.dist(&face);
    let center_to_vertex = b.dist(v);
    Ok(CommandinoRatio {
        center_to_face,
        center_to_vertex,
        collinearity_residual: center_to_vertex + center_to_face - v.dist(&face),
    })
}

pub fn median_sums(s: &Simplex) -> Result<MedianReport> {
    let profile = s.edge_profile();
    let m = s.m();
    let mf = m as f64;
    let b = s.barycenter();

    let mut median_lengths = Vec::with_capacity(m + 1);
    let mut apollonius_residuals = Vec::with_capacity(m + 1);
    let mut sum_squares_medians = 0.0;
    let mut sum_squares_center_to_vertices = 0.0;
    for i in 0..=m {
        let root = checked_sqrt(profile.vertex_radicand(i), profile.radicand_scale(i))?;
        median_lengths.push(root / mf);
        apollonius_residuals.push(apollonius_residual(s, i)?);
        sum_squares_medians += s.vertex(i).dist2(&s.face_centroid(i)?);
        sum_squares_center_to_vertices += b.dist2(s.vertex(i));
    }
    let sum_squares_edges = profile.sum_squares();

    let median_target = (mf + 1.0) / (mf * mf) * sum_squares_edges;
    let center_target = sum_squares_edges / (mf + 1.0);
    Ok(MedianReport {
        median_lengths,
        apollonius_residuals,
        sum_squares_medians,
        sum_squares_center_to_vertices,
        sum_squares_edges,
        median_sum_residual: (sum_squares_medians - median_target) / median_target,
        center_sum_residual: (sum_squares_center_to_vertices - center_target) / center_target,
    })
}

/// `|v_i - c_i|^2 + |v_j - c_i|^2 - |v_i - v_j|^2` for a regular simplex.
pub fn pythagoras_regular_residual(s: &Simplex, i: usize, j: usize) -> Result<f64> {
    s.check_index(i)?;
    s.check_index(j)?;
    if i == j {
        return Err(GeomError::InvalidArgument(format!(
            "indices must differ, got {i} twice"
        )));
    }
    s.require_regular()?;
    let face = s.face_centroid(i)?;
    Ok(s.vertex(i).dist2(&face) + s.vertex(j).dist2(&face) - s.vertex(i).dist2(s.vertex(j)))
}

/// Largest `|cos|` between the i-th median and the edges of the opposite face.
/// Zero when the median is also an altitude.
pub fn median_altitude_deviation(s: &Simplex, i: usize) -> Result<f64> {
    let face = s.face_centroid(i)?;
    let median = s.vertex(i).sub(&face);
    let median_len = norm(&median);
    let others: Vec<usize> = (0..=s.m()).filter(|&k| k != i).collect();
    let mut worst: f64 = 0.0;
    for (a, &p) in others.iter().enumerate() {
        for &q in &others[a + 1..] {
            let edge = s.vertex(q).sub(s.vertex(p));
            let cos = dot(&median, &edge) / (median_len * norm(&edge));
            worst = worst.max(cos.abs());
        }
    }
    Ok(worst)
}

/// `(sum_i |b - c_i|, beta_cir + beta_inr)` for a regular simplex.
///
/// The barycentric circumradius comes from edge lengths and the barycentric
/// inradius from projecting the barycenter onto each facet, so the two sides
/// share no computation.
pub fn carnot_regular_check(s: &Simplex) -> Result<(f64, f64)> {
    s.require_regular()?;
    let b = s.barycenter();
    let mut sum = 0.0;
    for i in 0..=s.m() {
        sum += b.dist(&s.face_centroid(i)?);
    }
    let (cir, _) = barycentric_circumradius(s);
    let (inr, _) = barycentric_inradius(s);
    Ok((sum, cir + inr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::regular_simplex;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn right_triangle() -> Simplex {
        Simplex::from_coords(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap()
    }

    #[test]
    fn median_length_examples() {
        let s = right_triangle();
        assert!((median_length(&s, 0).unwrap() - SQRT2).abs() < 1e-15);
        assert!((median_length_direct(&s, 0).unwrap() - SQRT2).abs() < 1e-15);
        assert!((median_length(&s, 1).unwrap() - 5f64.sqrt()).abs() < 1e-14);

        let tet = regular_simplex(3, 3, 1.0).unwrap();
        for i in 0..4 {
            assert!((median_length(&tet, i).unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        }

        let seg = Simplex::from_coords(vec![vec![0.0], vec![2.0]]).unwrap();
        assert_eq!(median_length(&seg, 0).unwrap(), 2.0);
        assert!(matches!(
            median_length(&seg, 2),
            Err(GeomError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn apollonius_examples() {
        let s = right_triangle();
        assert!(apollonius_residual(&s, 0).unwrap().abs() < 1e-13);

        // m = 2 specialisation: 2(a^2 + b^2) = c^2 + 4 mu^2
        let t =
            Simplex::from_coords(vec![vec![0.3, -1.0], vec![2.5, 0.4], vec![-0.7, 1.9]]).unwrap();
        let v = t.vertices();
        let (a2, b2, c2) = (v[0].dist2(&v[1]), v[0].dist2(&v[2]), v[1].dist2(&v[2]));
        let mu2 = v[0].dist2(&t.face_centroid(0).unwrap());
        assert!((2.0 * (a2 + b2) - c2 - 4.0 * mu2).abs() < 1e-12);
        assert!(apollonius_residual(&t, 0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn commandino_examples() {
        let c = commandino_ratio(&right_triangle(), 0).unwrap();
        assert!((c.center_to_face - SQRT2 / 3.0).abs() < 1e-15);
        assert!((c.center_to_vertex - 2.0 * SQRT2 / 3.0).abs() < 1e-15);
        assert!(c.ratio_deviation(2).abs() < 1e-15);
        assert!(c.collinearity_residual.abs() < 1e-15);

        let tet = regular_simplex(3, 3, 1.0).unwrap();
        for i in 0..4 {
            let c = commandino_ratio(&tet, i).unwrap();
            assert!((c.center_to_vertex / c.center_to_face - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_median_sums() {
        let t = Simplex::from_coords(vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![1.0, 3.0]]).unwrap();
        let r = median_sums(&t).unwrap();
        assert!((r.sum_squares_medians - 0.75 * r.sum_squares_edges).abs() < 1e-12);
        assert!((r.sum_squares_center_to_vertices - r.sum_squares_edges / 3.0).abs() < 1e-12);
    }

    #[test]
    fn regular_median_sums() {
        for m in 1..=8 {
            let s = regular_simplex(m, m, 1.0).unwrap();
            let r = median_sums(&s).unwrap();
            let mf = m as f64;
            let expected = (mf + 1.0) * (mf + 1.0) / (2.0 * mf);
            assert!(
                (r.sum_squares_medians - expected).abs() < 1e-11 * expected,
                "m = {m}"
            );
        }
    }

    #[test]
    fn pythagoras_examples() {
        let tri = regular_simplex(2, 2, 1.0).unwrap();
        let face = tri.face_centroid(0).unwrap();
        assert!((tri.vertex(0).dist2(&face) - 0.75).abs() < 1e-15);
        assert!((tri.vertex(1).dist2(&face) - 0.25).abs() < 1e-15);
        assert!(pythagoras_regular_residual(&tri, 0, 1).unwrap().abs() < 1e-15);

        let tet = regular_simplex(3, 3, 1.0).unwrap();
        for i in 0..4 {
            for j in (0..4).filter(|&j| j != i) {
                assert!(pythagoras_regular_residual(&tet, i, j).unwrap().abs() < 1e-10);
            }
            assert!(median_altitude_deviation(&tet, i).unwrap() < 1e-12);
        }

        assert!(matches!(
            pythagoras_regular_residual(&right_triangle(), 0, 1),
            Err(GeomError::NotRegular { .. })
        ));
        assert!(pythagoras_regular_residual(&tri, 1, 1).is_err());
    }

    #[test]
    fn carnot_examples() {
        let tri = regular_simplex(2, 2, 1.0).unwrap();
        let (sum, rhs) = carnot_regular_check(&tri).unwrap();
        let expected = 3f64.sqrt() / 2.0;
        assert!((sum - expected).abs() < 1e-14);
        assert!((rhs - expected).abs() < 1e-14);

        let tet = regular_simplex(3, 3, 1.0).unwrap();
        let (sum, rhs) = carnot_regular_check(&tet).unwrap();
        assert!((sum - 4.0 / 24f64.sqrt()).abs() < 1e-14);
        assert!((rhs - ((3.0f64 / 8.0).sqrt() + 1.0 / 24f64.sqrt())).abs() < 1e-14);

        let scalene =
            Simplex::from_coords(vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert!(matches!(
            carnot_regular_check(&scalene),
            Err(GeomError::NotRegular { .. })
        ));
    }
}
