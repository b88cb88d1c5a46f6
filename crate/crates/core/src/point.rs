//! Points in R^n.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// A point in R^n with finite coordinates and n >= 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(GeomError::EmptyPoint);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(GeomError::NonFinite { index, value });
        }
        Ok(Self(coords))
    }

    /// The origin of R^n.
    pub fn origin(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self(vec![0.0; n])
    }

    /// Builds a point from coordinates the caller already knows to be finite.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Self(coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn sub(&self, other: &Point) -> Vec<f64> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| 0.5 * (a + b))
                .collect(),
        )
    }

    /// Coordinate-wise mean. Panics on an empty slice.
    pub fn mean<'a, I>(points: I) -> Point
    where
        I: IntoIterator<Item = &'a Point>,
    {
        let mut iter = points.into_iter();
        let first = iter.next().expect("mean of an empty point set");
        let mut acc = first.0.clone();
        let mut count = 1usize;
        for p in iter {
            for (a, c) in acc.iter_mut().zip(&p.0) {
                *a += c;
            }
            count += 1;
        }
        let inv = 1.0 / count as f64;
        acc.iter_mut().for_each(|a| *a *= inv);
        Point(acc)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = GeomError;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_and_empty() {
        assert_eq!(Point::new(vec![]), Err(GeomError::EmptyPoint));
        assert!(matches!(
            Point::new(vec![0.0, f64::NAN]),
            Err(GeomError::NonFinite { index: 1, .. })
        ));
        assert!(Point::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn mean_and_distance() {
        let a = Point::new(vec![0.0, 0.0]).unwrap();
        let b = Point::new(vec![3.0, 4.0]).unwrap();
        assert_eq!(a.dist(&b), 5.0);
        assert_eq!(Point::mean([&a, &b]).coords(), &[1.5, 2.0]);
        assert_eq!(a.midpoint(&b).coords(), &[1.5, 2.0]);
    }

    #[test]
    fn json_rejects_non_finite() {
        assert!(serde_json::from_str::<Point>("[1.0, 1e400]").is_err());
        let p: Point = serde_json::from_str("[1.0, -2.5]").unwrap();
        assert_eq!(p.coords(), &[1.0, -2.5]);
    }
}
