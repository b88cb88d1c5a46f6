//! Command implementations. Each returns the text for standard output;
//! diagnostics travel back as [`CliError`].

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use simplexkit::apollonius::{
    carnot_regular_check, commandino_ratio, median_length_direct, median_sums,
    pythagoras_regular_residual,
};
use simplexkit::bisection::{lookup, registry_names, solve};
use simplexkit::enclosing::{
    barycentric_circumradius_direct, blumenthal_wahlin_check, combined_enclosure, exact_meb,
    fermat_sum_regular, jung_bound, regular_circumradius, set_barycentric_circumradius,
    set_diameter,
};
use simplexkit::io::{parse_point_set, parse_simplex};
use simplexkit::metrics::{
    barycentric_inradius, exact_inradius_fulldim, gale_diameter_check, metrics_report,
    regular_width, simplex_width,
};
use simplexkit::{
    corpus, regular_simplex, Ball, BisectionTrace, EnclosureReport, MedianReport, MetricsReport,
    Simplex,
};

use crate::error::CliError;
use crate::output::{to_json, ReportEnvelope};

/// Slack granted to the MEB-below-bound assertion, relative to the set diameter.
const DOMINANCE_SLACK: f64 = 1e-12;

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn as_text<'a>(path: &Path, bytes: &'a [u8]) -> Result<&'a str, CliError> {
    std::str::from_utf8(bytes).map_err(|e| CliError::Read {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })
}

fn load_simplex(path: &Path) -> Result<(Vec<u8>, Simplex), CliError> {
    let bytes = read(path)?;
    let s = parse_simplex(as_text(path, &bytes)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((bytes, s))
}

#[derive(Serialize)]
pub struct AnalyzePayload {
    pub m: usize,
    pub n: usize,
    pub medians: MedianReport,
    /// `| |b - v_i| - m |b - c_i| |` per vertex.
    pub commandino_deviations: Vec<f64>,
    pub metrics: MetricsReport,
    pub enclosure: EnclosureReport,
}

fn analyze_one(path: &Path) -> Result<String, CliError> {
    let (bytes, s) = load_simplex(path)?;
    let commandino_deviations = (0..=s.m())
        .map(|i| commandino_ratio(&s, i).map(|r| r.ratio_deviation(s.m()).abs()))
        .collect::<Result<_, _>>()?;
    let payload = AnalyzePayload {
        m: s.m(),
        n: s.n(),
        medians: median_sums(&s)?,
        commandino_deviations,
        metrics: metrics_report(&s),
        enclosure: combined_enclosure(&s),
    };
    Ok(to_json(&ReportEnvelope::new("analyze", &bytes, payload)))
}

/// Analyzes every file concurrently. Results come back in input order.
pub fn analyze(paths: &[PathBuf]) -> Vec<Result<String, CliError>> {
    paths.par_iter().map(|p| analyze_one(p)).collect()
}

#[derive(Serialize)]
pub struct BlumenthalWahlin {
    pub subset_max: f64,
    pub full: f64,
}

#[derive(Serialize)]
pub struct EnclosePayload {
    pub n: usize,
    pub point_count: usize,
    pub set_diameter: f64,
    pub meb: Ball,
    pub jung_bound: f64,
    pub set_barycentric_circumradius: Option<f64>,
    pub blumenthal_wahlin: Option<BlumenthalWahlin>,
    pub combined_bound: f64,
    /// MEB radius is at most `combined_bound` (up to rounding).
    pub dominance_holds: bool,
}

pub struct EncloseOptions {
    pub n: Option<usize>,
    pub variant_jung: bool,
    pub bw_check: bool,
}

pub fn enclose(path: &Path, opts: &EncloseOptions) -> Result<String, CliError> {
    let bytes = read(path)?;
    let set = parse_point_set(as_text(path, &bytes)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let points = &set.points;
    let n = opts.n.unwrap_or(points[0].dim());
    // The subset routines validate dimension, count and cap themselves; run
    // them before the unbounded work so bad requests fail fast.
    let set_bcr = opts
        .variant_jung
        .then(|| set_barycentric_circumradius(points, n))
        .transpose()?;
    let blumenthal_wahlin = opts
        .bw_check
        .then(|| blumenthal_wahlin_check(points, n))
        .transpose()?
        .map(|(subset_max, full)| BlumenthalWahlin { subset_max, full });
    if !opts.variant_jung && !opts.bw_check {
        check_plain_set(points, n)?;
    }

    let diam = set_diameter(points);
    let jung = jung_bound(diam, n)?;
    let meb = exact_meb(points)?;
    let combined_bound = set_bcr.map_or(jung, |b| b.min(jung));
    let dominance_holds = meb.radius <= combined_bound + DOMINANCE_SLACK * diam;
    let payload = EnclosePayload {
        n,
        point_count: points.len(),
        set_diameter: diam,
        meb,
        jung_bound: jung,
        set_barycentric_circumradius: set_bcr,
        blumenthal_wahlin,
        combined_bound,
        dominance_holds,
    };
    Ok(to_json(&ReportEnvelope::new("enclose", &bytes, payload)))
}

fn check_plain_set(points: &[simplexkit::Point], n: usize) -> Result<(), simplexkit::GeomError> {
    use simplexkit::GeomError;
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
    Ok(())
}

pub struct SolveOptions<'a> {
    pub tol: f64,
    pub max_iter: usize,
    pub trace: Option<&'a Path>,
}

/// Runs the solver. A run that stops on `max_iter` still produces its report,
/// returned next to the error.
pub fn solve_cmd(
    fn_name: &str,
    path: &Path,
    opts: &SolveOptions,
) -> Result<(String, Option<CliError>), CliError> {
    let f = lookup(fn_name).ok_or_else(|| CliError::UnknownFunction {
        name: fn_name.to_string(),
        known: registry_names().join(", "),
    })?;
    let (bytes, s) = load_simplex(path)?;
    let trace: BisectionTrace = solve(&f, &s, opts.tol, opts.max_iter)?;
    if let Some(trace_path) = opts.trace {
        let mut lines = String::new();
        for step in &trace.steps {
            lines.push_str(&to_json(step));
            lines.push('\n');
        }
        fs::write(trace_path, lines).map_err(|source| CliError::Write {
            path: trace_path.to_path_buf(),
            source,
        })?;
    }
    let status = (!trace.converged).then(|| CliError::MaxIter {
        iterations: trace.iterations(),
        epsilon: trace.final_error_estimate,
    });
    Ok((
        to_json(&ReportEnvelope::new("solve", &bytes, trace)),
        status,
    ))
}

#[derive(Serialize)]
pub struct ClosedFormCheck {
    pub quantity: &'static str,
    pub closed_form: f64,
    pub computed: f64,
    pub abs_diff: f64,
}

#[derive(Serialize)]
pub struct RegularPayload {
    pub m: usize,
    pub n: usize,
    pub diam: f64,
    pub simplex: Simplex,
    pub checks: Vec<ClosedFormCheck>,
    pub pythagoras_residual: f64,
}

pub fn regular(m: usize, n: usize, diam: f64) -> Result<String, CliError> {
    let s = regular_simplex(m, n, diam)?;
    let mf = m as f64;
    let mut checks = Vec::new();
    let mut push = |quantity, closed_form: f64, computed: f64| {
        checks.push(ClosedFormCheck {
            quantity,
            closed_form,
            computed,
            abs_diff: (closed_form - computed).abs(),
        })
    };
    let inr_closed = diam / (2.0 * mf * (mf + 1.0)).sqrt();
    let (inr, _) = barycentric_inradius(&s);
    push(
        "median",
        diam * ((mf + 1.0) / (2.0 * mf)).sqrt(),
        median_length_direct(&s, 0)?,
    );
    push(
        "barycentric_circumradius",
        regular_circumradius(m, diam)?,
        barycentric_circumradius_direct(&s),
    );
    push("barycentric_inradius", inr_closed, inr);
    if m == n {
        push(
            "exact_inradius",
            inr_closed,
            exact_inradius_fulldim(&s)?.radius,
        );
    }
    push("thickness", inr_closed / diam, inr / s.edge_profile().diam);
    let (fermat, fermat_closed) = fermat_sum_regular(&s)?;
    push("fermat_sum", fermat_closed, fermat);
    push("width", regular_width(m, diam)?, simplex_width(&s)?);
    let (carnot_lhs, carnot_rhs) = carnot_regular_check(&s)?;
    push("carnot_sum", carnot_rhs, carnot_lhs);
    let (gale_closed, gale) = gale_diameter_check(m)?;
    push("diameter_at_half_inradius", gale_closed, gale);

    let payload = RegularPayload {
        m,
        n,
        diam,
        pythagoras_residual: pythagoras_regular_residual(&s, 0, 1)?,
        simplex: s,
        checks,
    };
    let args = format!("regular m={m} n={n} diam={}", to_json(&diam));
    Ok(to_json(&ReportEnvelope::new(
        "regular",
        args.as_bytes(),
        payload,
    )))
}

pub struct CorpusOptions {
    pub seed: u64,
    pub count: usize,
    pub m: usize,
    pub n: usize,
    pub coord_range: f64,
}

/// One simplex file per line.
pub fn corpus(opts: &CorpusOptions) -> Result<String, CliError> {
    use simplexkit::GeomError;
    if opts.m < 1 || opts.n < opts.m {
        return Err(GeomError::InvalidDimension(format!(
            "need n >= m >= 1, got m = {}, n = {}",
            opts.m, opts.n
        ))
        .into());
    }
    if !(opts.coord_range > 0.0 && opts.coord_range.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "coord-range = {} must be positive",
            opts.coord_range
        ))
        .into());
    }
    let mut rng = corpus::rng(opts.seed);
    let mut out = String::new();
    for _ in 0..opts.count {
        out.push_str(&to_json(&corpus::random_simplex(
            &mut rng,
            opts.m,
            opts.n,
            opts.coord_range,
        )));
        out.push('\n');
    }
    Ok(out)
}
