//! JSON file formats.
//!
//! * simplex: `{"vertices": [[x0, ..., x_{n-1}], ...]}`
//! * point set: `{"points": [[...], ...]}`
//!
//! Non-finite numbers are rejected while parsing.

use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::point::Point;
use crate::simplex::Simplex;

/// Why an input file was rejected.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    /// Not valid JSON of the expected shape, or a non-finite number.
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    /// Well-formed, but the coordinates do not describe a valid object.
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimplex {
    vertices: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPointSet {
    points: Vec<Vec<f64>>,
}

pub fn parse_simplex(text: &str) -> Result<Simplex, ParseError> {
    let raw: RawSimplex = serde_json::from_str(text)?;
    Ok(Simplex::from_coords(raw.vertices)?)
}

pub fn parse_point_set(text: &str) -> Result<PointSet, ParseError> {
    let raw: RawPointSet = serde_json::from_str(text)?;
    let points = raw
        .points
        .into_iter()
        .map(Point::new)
        .collect::<Result<Vec<_>, _>>()?;
    if points.is_empty() {
        return Err(GeomError::EmptyInput.into());
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != points[0].dim()) {
        return Err(GeomError::DimensionMismatch {
            expected: points[0].dim(),
            found: bad.dim(),
        }
        .into());
    }
    Ok(PointSet { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_round_trip() {
        let s = parse_simplex(r#"{"vertices": [[0, 0], [1, 0], [0, 1]]}"#).unwrap();
        assert_eq!((s.m(), s.n()), (2, 2));
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(parse_simplex(&text).unwrap(), s);
    }

    #[test]
    fn rejects_bad_simplices() {
        assert!(matches!(
            parse_simplex(r#"{"vertices": [[0, 0], [1, 0], [2, 0]]}"#),
            Err(ParseError::Geometry(GeomError::Degenerate { .. }))
        ));
        assert!(matches!(parse_simplex("{"), Err(ParseError::Json(_))));
        assert!(parse_simplex(r#"{"vertices": [[0, 0], [1e999, 0], [0, 1]]}"#).is_err());
        assert!(parse_simplex(r#"{"vertices": [[0, 0], [1]]}"#).is_err());
        assert!(parse_simplex(r#"{"points": [[0, 0], [1, 1]]}"#).is_err());
    }

    #[test]
    fn point_sets() {
        let set = parse_point_set(r#"{"points": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#).unwrap();
        assert_eq!(set.points.len(), 4);
        assert!(parse_point_set(r#"{"points": [[NaN]]}"#).is_err());
        assert!(parse_point_set(r#"{"points": []}"#).is_err());
        assert!(parse_point_set(r#"{"points": [[0, 0], [1]]}"#).is_err());
    }
}
