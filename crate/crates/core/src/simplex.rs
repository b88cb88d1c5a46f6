//! Simplices, their edge profiles, barycenters and faces.
//!
//! A simplex `[v0, v1, ..., vm]` is an ordered list of m+1 affinely
//! independent points of R^n with n >= m >= 1. Vertex order is preserved
//! everywhere; every per-vertex quantity in this crate is indexed by it.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::point::Point;

/// Relative threshold of the affine-independence test.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Two edge lengths within this relative distance are treated as tied when
/// choosing the longest and shortest edge.
pub const EDGE_TIE_TOLERANCE: f64 = 1e-12;

/// Relative edge spread `(diam - shor) / diam` under which a simplex counts as regular.
pub const REGULARITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simplex {
    vertices: Vec<Point>,
}

#[derive(Deserialize)]
struct RawSimplex {
    vertices: Vec<Point>,
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawSimplex::deserialize(deserializer)?;
        Simplex::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}

/// How the affine-independence test scales its threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum RankScale {
    /// Threshold relative to the largest singular value floored at 1.
    Floored,
    /// Threshold relative to the largest singular value only.
    Relative,
}

impl Simplex {
    /// Validates `vertices` as an m-simplex: at least two points of a common
    /// dimension n >= m whose difference vectors `v_k - v_0` have full rank m.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        Self::with_rank_scale(vertices, RankScale::Floored)
    }

    pub fn from_coords(coords: Vec<Vec<f64>>) -> Result<Self> {
        let vertices = coords
            .into_iter()
            .map(Point::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub(crate) fn with_rank_scale(vertices: Vec<Point>, scale: RankScale) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(GeomError::TooFewPoints {
                needed: 2,
                got: vertices.len(),
            });
        }
        let n = vertices[0].dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != n) {
            return Err(GeomError::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let m = vertices.len() - 1;
        if n < m {
            return Err(GeomError::InvalidDimension(format!(
                "{} points cannot be affinely independent in R^{n}",
                m + 1
            )));
        }
        check_rank(&vertices, scale)?;
        Ok(Self { vertices })
    }

    /// Builds a simplex from vertices known to be affinely independent.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 2);
        Self { vertices }
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    /// Simplex dimension m (one less than the vertex count).
    #[inline]
    pub fn m(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Ambient dimension n.
    #[inline]
    pub fn n(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.m() == self.n()
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i > self.m() {
            Err(GeomError::IndexOutOfRange {
                index: i,
                len: self.vertices.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn edge_profile(&self) -> EdgeProfile {
        EdgeProfile::new(&self.vertices)
    }

    /// The barycenter `(1/(m+1)) * sum v_j`.
    pub fn barycenter(&self) -> Point {
        Point::mean(&self.vertices)
    }

    /// Centroid of the (m-1)-face opposite vertex `i`.
    pub fn face_centroid(&self, i: usize) -> Result<Point> {
        self.check_index(i)?;
        Ok(Point::mean(
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v),
        ))
    }

    /// The face obtained by removing the vertices listed in `drop`, order preserved.
    pub fn sub_face(&self, drop: &[usize]) -> Result<Simplex> {
        for &i in drop {
            self.check_index(i)?;
        }
        let kept: Vec<Point> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(j, _)| !drop.contains(j))
            .map(|(_, v)| v.clone())
            .collect();
        if kept.len() < 2 {
            return Err(GeomError::TooFewPoints {
                needed: 2,
                got: kept.len(),
            });
        }
        // A subset of affinely independent points is affinely independent.
        Ok(Simplex::from_vertices_unchecked(kept))
    }

    /// Vertices of the face opposite `i` (may be a single point when m = 1).
    pub(crate) fn opposite_vertices(&self, i: usize) -> Vec<Point> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// `(diam - shor) / diam`.
    pub fn edge_spread(&self) -> f64 {
        self.edge_profile().spread()
    }

    pub(crate) fn require_regular(&self) -> Result<EdgeProfile> {
        let profile = self.edge_profile();
        let spread = profile.spread();
        if spread > REGULARITY_TOLERANCE {
            return Err(GeomError::NotRegular {
                spread,
                tolerance: REGULARITY_TOLERANCE,
            });
        }
        Ok(profile)
    }

    /// m-volume of the simplex: `sqrt(det(E^T E)) / m!` with `E` the difference vectors.
    pub fn volume(&self) -> f64 {
        let m = self.m();
        let n = self.n();
        let origin = &self.vertices[0];
        let e = DMatrix::from_fn(n, m, |r, c| {
            self.vertices[c + 1].coords()[r] - origin.coords()[r]
        });
        let gram = e.transpose() * &e;
        let det = gram.determinant().max(0.0);
        let factorial: f64 = (1..=m).map(|k| k as f64).product();
        det.sqrt() / factorial
    }
}

fn check_rank(vertices: &[Point], scale: RankScale) -> Result<()> {
    let m = vertices.len() - 1;
    let n = vertices[0].dim();
    let origin = &vertices[0];
    let diffs = DMatrix::from_fn(m, n, |r, c| {
        vertices[r + 1].coords()[c] - origin.coords()[c]
    });
    let sv = diffs.singular_values();
    let largest = sv.iter().cloned().fold(0.0_f64, f64::max);
    let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let reference = match scale {
        RankScale::Floored => largest.max(1.0),
        RankScale::Relative => largest,
    };
    let threshold = RANK_TOLERANCE * reference;
    if smallest.is_nan() || smallest <= threshold {
        return Err(GeomError::Degenerate {
            smallest,
            threshold,
        });
    }
    Ok(())
}

/// One edge `{i, j}` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub length: f64,
}

/// All m(m+1)/2 edge lengths in lexicographic pair order, plus the longest
/// and shortest edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeProfile {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub diam: f64,
    pub shor: f64,
    pub diam_edge: (usize, usize),
    pub shor_edge: (usize, usize),
}

impl EdgeProfile {
    fn new(vertices: &[Point]) -> Self {
        let k = vertices.len();
        let mut edges = Vec::with_capacity(k * (k - 1) / 2);
        for i in 0..k {
            for j in (i + 1)..k {
                edges.push(Edge {
                    i,
                    j,
                    length: vertices[i].dist(&vertices[j]),
                });
            }
        }
        // Pairs are visited lexicographically; a later pair only wins when it is
        // longer (shorter) by more than the tie tolerance.
        let mut longest = edges[0];
        let mut shortest = edges[0];
        for e in &edges[1..] {
            if e.length > longest.length * (1.0 + EDGE_TIE_TOLERANCE) {
                longest = *e;
            }
            if e.length < shortest.length * (1.0 - EDGE_TIE_TOLERANCE) {
                shortest = *e;
            }
        }
        Self {
            vertex_count: k,
            edges,
            diam: longest.length,
            shor: shortest.length,
            diam_edge: (longest.i, longest.j),
            shor_edge: (shortest.i, shortest.j),
        }
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let k = self.vertex_count;
        // Offset of row i in the packed upper triangle.
        i * (2 * k - i - 1) / 2 + (j - i - 1)
    }

    /// Length of edge `{i, j}`. Panics when `i == j` or an index is out of range.
    pub fn length(&self, i: usize, j: usize) -> f64 {
        assert!(i != j && i < self.vertex_count && j < self.vertex_count);
        self.edges[self.pair_index(i, j)].length
    }

    pub fn spread(&self) -> f64 {
        (self.diam - self.shor) / self.diam
    }

    /// Sum of all squared edge lengths.
    pub fn sum_squares(&self) -> f64 {
        self.edges.iter().map(|e| e.length * e.length).sum()
    }

    /// `m * sum_{j != i} |v_i - v_j|^2 - sum_{p<q; p,q != i} |v_p - v_q|^2`,
    /// the edge-length expression shared by the median, barycentric
    /// circumradius and face-centroid distance formulas. Equals
    /// `m^2 |v_i - c_i|^2` where `c_i` is the centroid of the opposite face.
    pub fn vertex_radicand(&self, i: usize) -> f64 {
        let m = (self.vertex_count - 1) as f64;
        let mut incident = 0.0;
        let mut opposite = 0.0;
        for e in &self.edges {
            let sq = e.length * e.length;
            if e.i == i || e.j == i {
                incident += sq;
            } else {
                opposite += sq;
            }
        }
        m * incident - opposite
    }

    /// The positive part of [`vertex_radicand`](Self::vertex_radicand), used as
    /// its rounding scale.
    pub(crate) fn radicand_scale(&self, i: usize) -> f64 {
        let m = (self.vertex_count - 1) as f64;
        let incident: f64 = self
            .edges
            .iter()
            .filter(|e| e.i == i || e.j == i)
            .map(|e| e.length * e.length)
            .sum();
        m * incident
    }
}

/// Square root of a radicand, clamping tiny negative rounding noise to zero.
pub(crate) fn checked_sqrt(value: f64, scale: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value >= -1e-9 * scale {
        Ok(0.0)
    } else {
        Err(GeomError::NegativeRadicand { value, scale })
    }
}

/// A regular m-simplex with edge length `diam`, centered at the origin of R^n.
///
/// Built from the scaled basis points `(diam / sqrt 2) e_k` of R^(m+1): they
/// are translated to their centroid, expressed in an orthonormal basis of
/// their affine hull (giving coordinates in R^m) and padded with zeros.
pub fn regular_simplex(m: usize, n: usize, diam: f64) -> Result<Simplex> {
    if m < 1 {
        return Err(GeomError::InvalidDimension(format!(
            "m = {m} must be at least 1"
        )));
    }
    if n < m {
        return Err(GeomError::InvalidDimension(format!("n = {n} < m = {m}")));
    }
    if !(diam > 0.0 && diam.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "diam = {diam} must be positive"
        )));
    }
    let k = m + 1;
    let s = diam / std::f64::consts::SQRT_2;
    let centroid = s / k as f64;
    let lifted: Vec<Vec<f64>> = (0..k)
        .map(|v| {
            (0..k)
                .map(|c| if c == v { s - centroid } else { -centroid })
                .collect()
        })
        .collect();

    // Modified Gram-Schmidt on v_k - v_0 spans the hull directions.
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    for v in 1..k {
        let mut d: Vec<f64> = lifted[v]
            .iter()
            .zip(&lifted[0])
            .map(|(a, b)| a - b)
            .collect();
        for b in &basis {
            let proj = crate::point::dot(&d, b);
            d.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
        }
        let len = crate::point::norm(&d);
        d.iter_mut().for_each(|x| *x /= len);
        basis.push(d);
    }

    let vertices = lifted
        .iter()
        .map(|p| {
            let mut coords: Vec<f64> = basis.iter().map(|b| crate::point::dot(p, b)).collect();
            coords.resize(n, 0.0);
            Point::from_vec_unchecked(coords)
        })
        .collect();
    Ok(Simplex::from_vertices_unchecked(vertices))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(coords: &[&[f64]]) -> Result<Simplex> {
        Simplex::from_coords(coords.iter().map(|c| c.to_vec()).collect())
    }

    fn right_triangle() -> Simplex {
        simplex(&[&[0.0, 0.0], &[2.0, 0.0], &[0.0, 2.0]]).unwrap()
    }

    #[test]
    fn validation() {
        let s = simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert_eq!((s.m(), s.n()), (2, 2));

        assert!(matches!(
            simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]),
            Err(GeomError::Degenerate { .. })
        ));

        let s = simplex(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        assert_eq!((s.m(), s.n()), (2, 3));

        assert!(matches!(
            simplex(&[&[0.0, 0.0], &[1.0]]),
            Err(GeomError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            simplex(&[&[0.0]]),
            Err(GeomError::TooFewPoints { .. })
        ));
        assert!(matches!(
            simplex(&[&[0.0], &[1.0], &[2.0]]),
            Err(GeomError::InvalidDimension(_))
        ));
    }

    #[test]
    fn large_coordinates_are_not_falsely_degenerate() {
        let s = simplex(&[&[1e6, 1e6], &[1e6 + 1.0, 1e6], &[1e6, 1e6 + 1.0]]);
        assert!(s.is_ok());
    }

    #[test]
    fn edge_profile_examples() {
        let p = right_triangle().edge_profile();
        assert_eq!(p.length(0, 1), 2.0);
        assert_eq!(p.length(0, 2), 2.0);
        assert!((p.length(1, 2) - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!((p.diam - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(p.diam_edge, (1, 2));
        assert_eq!(p.shor, 2.0);
        assert_eq!(p.shor_edge, (0, 1));

        let tri = regular_simplex(2, 2, 1.0).unwrap().edge_profile();
        assert_eq!(tri.edges.len(), 3);
        assert_eq!(tri.diam_edge, (0, 1));
        assert_eq!(tri.shor_edge, (0, 1));
        assert!((tri.diam - 1.0).abs() < 1e-14 && (tri.shor - 1.0).abs() < 1e-14);

        let seg = simplex(&[&[0.0], &[3.0]]).unwrap().edge_profile();
        assert_eq!((seg.diam, seg.shor), (3.0, 3.0));
    }

    #[test]
    fn pair_index_matches_layout() {
        let s = regular_simplex(5, 5, 1.0).unwrap();
        let p = s.edge_profile();
        for e in &p.edges {
            assert_eq!(
                p.pair_index(e.i, e.j),
                p.edges.iter().position(|x| x == e).unwrap()
            );
        }
    }

    #[test]
    fn barycenter_examples() {
        let b = right_triangle().barycenter();
        assert!((b.coords()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((b.coords()[1] - 2.0 / 3.0).abs() < 1e-15);

        let r = regular_simplex(4, 6, 1.0).unwrap().barycenter();
        assert!(r.coords().iter().all(|c| c.abs() < 1e-15));

        let seg = simplex(&[&[0.0], &[4.0]]).unwrap();
        assert_eq!(seg.barycenter().coords(), &[2.0]);
    }

    #[test]
    fn face_centroid_examples() {
        let s = right_triangle();
        assert_eq!(s.face_centroid(0).unwrap().coords(), &[1.0, 1.0]);
        assert_eq!(s.face_centroid(1).unwrap().coords(), &[0.0, 1.0]);
        assert!(matches!(
            s.face_centroid(3),
            Err(GeomError::IndexOutOfRange { .. })
        ));

        let t = regular_simplex(3, 3, 1.0).unwrap();
        for i in 0..4 {
            let c = t.face_centroid(i).unwrap();
            let others: Vec<&Point> = (0..4).filter(|&j| j != i).map(|j| t.vertex(j)).collect();
            for d in 0..3 {
                let avg = others.iter().map(|p| p.coords()[d]).sum::<f64>() / 3.0;
                assert!((c.coords()[d] - avg).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sub_face_examples() {
        let tri = right_triangle();
        let f = tri.sub_face(&[0]).unwrap();
        assert_eq!(f.vertices(), &tri.vertices()[1..]);

        let tet = regular_simplex(3, 3, 1.0).unwrap();
        let f = tet.sub_face(&[1, 3]).unwrap();
        assert_eq!(
            f.vertices(),
            &[tet.vertex(0).clone(), tet.vertex(2).clone()]
        );

        assert!(matches!(
            tri.sub_face(&[0, 1, 2]),
            Err(GeomError::TooFewPoints { .. })
        ));
        assert!(matches!(
            tri.sub_face(&[5]),
            Err(GeomError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn regular_simplex_examples() {
        let tri = regular_simplex(2, 2, 1.0).unwrap();
        assert!(tri
            .edge_profile()
            .edges
            .iter()
            .all(|e| (e.length - 1.0).abs() < 1e-12));

        let emb = regular_simplex(2, 5, 2.0).unwrap();
        assert_eq!(emb.n(), 5);
        assert!(emb
            .edge_profile()
            .edges
            .iter()
            .all(|e| (e.length - 2.0).abs() < 2e-12));

        assert!(matches!(
            regular_simplex(3, 2, 1.0),
            Err(GeomError::InvalidDimension(_))
        ));
        assert!(regular_simplex(2, 2, 0.0).is_err());

        for m in 1..=12 {
            let s = regular_simplex(m, m + 2, 1.7).unwrap();
            let s = Simplex::new(s.vertices().to_vec()).unwrap();
            assert!(s.edge_spread() <= 1e-12, "m = {m}");
        }
    }

    #[test]
    fn vertex_radicand_matches_median_definition() {
        let s = right_triangle();
        let p = s.edge_profile();
        // 2 * (4 + 4) - 8 = 8 = 2^2 * |v0 - c0|^2 = 4 * 2
        assert!((p.vertex_radicand(0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn volume_of_corner_simplex() {
        let s = simplex(&[
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!((s.volume() - 1.0 / 6.0).abs() < 1e-15);
        assert!((right_triangle().volume() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn checked_sqrt_floor() {
        assert_eq!(checked_sqrt(4.0, 1.0), Ok(2.0));
        assert_eq!(checked_sqrt(-1e-12, 1.0), Ok(0.0));
        assert!(matches!(
            checked_sqrt(-1e-3, 1.0),
            Err(GeomError::NegativeRadicand { .. })
        ));
    }
}
