//! Generalized bisection for `F(x) = 0` on an n-simplex of R^n.
//!
//! Each iteration bisects the current simplex and keeps a child that passes
//! a component-wise sign test: for every component `f_k` some vertex has
//! `f_k <= 0` and some vertex has `f_k >= 0`. When both children pass, the
//! one containing the zero of the linear interpolant of its vertex values is
//! kept; this decides correctly whenever `F` is affine. If that does not
//! single out a child, the one with the smaller largest vertex residual
//! `|F(v)|_inf` is kept. The
//! barycenter of the final simplex approximates the root; its error estimate
//! bounds the distance to every point of that simplex.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{bisect, error_estimate_from, kearfott_bound, registry::SystemFunction, Child};
use crate::error::{GeomError, Result};
use crate::point::Point;
use crate::simplex::Simplex;

/// Values with `|f_k|` at most this times `1 + max |F|_inf` count as both signs.
const SIGN_ZERO_TOLERANCE: f64 = 1e-12;

/// Barycentric weights down to this value count as inside the simplex.
const INTERPOLANT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChildChoice {
    Initial,
    Lower,
    Upper,
}

impl From<Child> for ChildChoice {
    fn from(c: Child) -> Self {
        match c {
            Child::Lower => ChildChoice::Lower,
            Child::Upper => ChildChoice::Upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BisectionStep {
    pub depth: usize,
    pub choice: ChildChoice,
    pub diam: f64,
    pub shor: f64,
    pub epsilon: f64,
    pub kearfott_bound: f64,
    pub barycenter: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BisectionTrace {
    pub function: String,
    pub steps: Vec<BisectionStep>,
    pub final_approximation: Point,
    pub final_error_estimate: f64,
    pub converged: bool,
    /// Euclidean norm of `F` at the final approximation.
    pub residual_norm: f64,
    /// Simplex selected last.
    pub final_simplex: Simplex,
}

impl BisectionTrace {
    /// Number of bisections performed.
    pub fn iterations(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    /// One JSON object per step, newline-terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&serde_json::to_string(step).expect("steps serialize"));
            out.push('\n');
        }
        out
    }
}

/// A simplex together with `F` at each of its vertices.
struct Evaluated {
    simplex: Simplex,
    values: Vec<Vec<f64>>,
}

impl Evaluated {
    fn max_residual(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0, |acc: f64, x| acc.max(x.abs()))
    }

    /// Smallest barycentric weight of the zero of the affine map that
    /// interpolates `F` at the vertices; `None` when that map is singular.
    fn interpolant_weight(&self) -> Option<f64> {
        let k = self.values.len();
        let a = DMatrix::from_fn(k, k, |r, c| if r + 1 < k { self.values[c][r] } else { 1.0 });
        let mut rhs = DVector::zeros(k);
        rhs[k - 1] = 1.0;
        let weights = a.lu().solve(&rhs)?;
        weights.iter().all(|w| w.is_finite()).then(|| weights.min())
    }

    fn contains_interpolant_zero(&self) -> bool {
        self.interpolant_weight()
            .is_some_and(|w| w >= -INTERPOLANT_TOLERANCE)
    }

    fn admissible(&self) -> bool {
        let zero = SIGN_ZERO_TOLERANCE * (1.0 + self.max_residual());
        let n = self.values[0].len();
        (0..n).all(|k| {
            let non_pos = self.values.iter().any(|v| v[k] <= zero);
            let non_neg = self.values.iter().any(|v| v[k] >= -zero);
            non_pos && non_neg
        })
    }
}

fn evaluate(f: &dyn SystemFunction, x: &Point) -> Result<Vec<f64>> {
    let y = f.evaluate(x.coords());
    if y.len() != f.dimension() {
        return Err(GeomError::DimensionMismatch {
            expected: f.dimension(),
            found: y.len(),
        });
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::EvaluationFailure {
            point: x.coords().to_vec(),
        });
    }
    Ok(y)
}

fn record(depth: usize, choice: ChildChoice, s: &Simplex, diam0: f64) -> Result<BisectionStep> {
    let profile = s.edge_profile();
    Ok(BisectionStep {
        depth,
        choice,
        diam: profile.diam,
        shor: profile.shor,
        epsilon: error_estimate_from(s.m(), profile.diam, profile.shor)?,
        kearfott_bound: kearfott_bound(depth, s.m(), diam0)?,
        barycenter: s.barycenter(),
    })
}

/// Bisects `s0` until the error estimate drops to `tol` or `max_iter`
/// bisections have been performed.
pub fn solve(
    f: &dyn SystemFunction,
    s0: &Simplex,
    tol: f64,
    max_iter: usize,
) -> Result<BisectionTrace> {
    let n = f.dimension();
    if s0.n() != n {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            found: s0.n(),
        });
    }
    if !s0.is_full_dimensional() {
        return Err(GeomError::NotFullDimensional {
            m: s0.m(),
            n: s0.n(),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(GeomError::InvalidArgument(format!(
            "tol = {tol} must be positive"
        )));
    }
    if max_iter < 1 {
        return Err(GeomError::InvalidArgument(
            "max_iter must be at least 1".into(),
        ));
    }

    let diam0 = s0.edge_profile().diam;
    let mut current = Evaluated {
        values: s0
            .vertices()
            .iter()
            .map(|v| evaluate(f, v))
            .collect::<Result<_>>()?,
        simplex: s0.clone(),
    };
    if !current.admissible() {
        return Err(GeomError::NoSignCriterion { depth: 0 });
    }

    let mut steps = vec![record(0, ChildChoice::Initial, s0, diam0)?];
    while steps.last().expect("non-empty").epsilon > tol && steps.len() <= max_iter {
        let depth = steps.len();
        let (i, j) = current.simplex.edge_profile().diam_edge;
        let (lower, upper) = bisect(&current.simplex)?;
        // The midpoint is the only new vertex; every other value is inherited.
        let mid_value = evaluate(f, lower.vertex(i))?;
        let mut lower_values = current.values.clone();
        lower_values[i] = mid_value.clone();
        let mut upper_values = std::mem::take(&mut current.values);
        upper_values[j] = mid_value;
        let lower = Evaluated {
            simplex: lower,
            values: lower_values,
        };
        let upper = Evaluated {
            simplex: upper,
            values: upper_values,
        };

        let (choice, next) = match (lower.admissible(), upper.admissible()) {
            (true, true) => match (
                lower.contains_interpolant_zero(),
                upper.contains_interpolant_zero(),
            ) {
                (false, true) => (Child::Upper, upper),
                (true, false) => (Child::Lower, lower),
                _ if upper.max_residual() < lower.max_residual() => (Child::Upper, upper),
                _ => (Child::Lower, lower),
            },
            (true, false) => (Child::Lower, lower),
            (false, true) => (Child::Upper, upper),
            (false, false) => return Err(GeomError::NoSignCriterion { depth }),
        };
        steps.push(record(depth, choice.into(), &next.simplex, diam0)?);
        current = next;
    }

    let last = steps.last().expect("non-empty");
    let final_approximation = last.barycenter.clone();
    let final_error_estimate = last.epsilon;
    let residual_norm = f
        .evaluate(final_approximation.coords())
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    Ok(BisectionTrace {
        function: f.name().to_string(),
        converged: final_error_estimate <= tol,
        steps,
        final_approximation,
        final_error_estimate,
        residual_norm,
        final_simplex: current.simplex,
    })
}
