//! Diameter decay, volume partition and error bounds along bisection paths,
//! and soundness of the root finder on separable systems.

use proptest::prelude::*;
use rand::Rng;
use simplexkit::bisection::{
    bisect, containment_bound, error_estimate, kearfott_bound, lookup, solve, FnSystem,
    SystemFunction,
};
use simplexkit::corpus::{random_simplex, rng};
use simplexkit::{GeomError, Simplex};

const FACTOR: f64 = 0.866_025_403_784_438_6;

/// Checks every invariant that must hold for `child` at depth `p` below a
/// root of diameter `diam0`.
fn check_step(child: &Simplex, p: usize, diam0: f64) {
    let m = child.m();
    let profile = child.edge_profile();
    assert!(
        profile.diam <= kearfott_bound(p, m, diam0).unwrap() + 1e-12,
        "depth {p}"
    );
    let eps = error_estimate(child).unwrap();
    let mf = m as f64;
    assert!(eps <= mf / (mf + 1.0) * FACTOR.powi((p / m) as i32) * diam0 + 1e-12);
    let b = child.barycenter();
    for v in child.vertices() {
        assert!(
            b.dist(v) <= eps + 1e-12,
            "p {p} m {m} dist {} eps {eps} diam {} shor {}",
            b.dist(v),
            profile.diam,
            profile.shor
        );
        assert!(b.dist(v) <= containment_bound(p, m, diam0).unwrap() + 1e-12);
    }
}

fn explore(s: &Simplex, p: usize, diam0: f64, g: &mut impl Rng) {
    check_step(s, p, diam0);
    if p == 30 {
        return;
    }
    let (lower, upper) = bisect(s).unwrap();
    if s.m() == s.n() {
        let (vl, vu, v) = (lower.volume(), upper.volume(), s.volume());
        assert!(
            (vl + vu - v).abs() <= 1e-9 * v,
            "depth {p}: {vl} + {vu} != {v}"
        );
    }
    if p < 10 {
        explore(&lower, p + 1, diam0, g);
        explore(&upper, p + 1, diam0, g);
    } else {
        let next = if g.random_bool(0.5) { lower } else { upper };
        explore(&next, p + 1, diam0, g);
    }
}

#[test]
fn all_paths_obey_the_diameter_and_error_bounds() {
    // Full binary tree to depth 10, then one random branch to depth 30.
    for seed in 0..20u64 {
        let mut g = rng(seed);
        let m = 1 + (seed as usize % 5);
        let n = m + (seed as usize / 5) % 2;
        let s = random_simplex(&mut g, m, n, 1.0);
        explore(&s, 0, s.edge_profile().diam, &mut g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_paths_obey_the_bounds(seed in any::<u64>(), m in 1usize..=5, extra in 0usize..=2) {
        let mut g = rng(seed);
        let mut s = random_simplex(&mut g, m, m + extra, 1.0);
        let diam0 = s.edge_profile().diam;
        for p in 0..=30 {
            check_step(&s, p, diam0);
            let (lower, upper) = bisect(&s).unwrap();
            s = if g.random_bool(0.5) { lower } else { upper };
        }
    }

    #[test]
    fn separable_linear_roots_are_found(
        root in prop::collection::vec(0.05..0.3f64, 2),
        slopes in prop::collection::vec(0.1..5.0f64, 2),
    ) {
        // F_k(x) = a_k (x_k - r_k) on the corner simplex; the sign test is
        // exact for this family.
        let (r, a) = (root.clone(), slopes.clone());
        let f = FnSystem::new("affine", 2, move |x| vec![a[0] * (x[0] - r[0]), a[1] * (x[1] - r[1])]);
        let s0 = Simplex::from_coords(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let trace = solve(&f, &s0, 1e-6, 400).unwrap();
        prop_assert!(trace.converged);
        let x = trace.final_approximation.coords();
        let err = ((x[0] - root[0]).powi(2) + (x[1] - root[1]).powi(2)).sqrt();
        prop_assert!(err <= trace.final_error_estimate, "{err} > {}", trace.final_error_estimate);
    }
}

#[test]
fn registry_systems_converge_to_their_roots() {
    let interval = |a: f64, b: f64| Simplex::from_coords(vec![vec![a], vec![b]]).unwrap();
    let cases: Vec<(&str, Simplex, Vec<f64>)> = vec![
        ("linear-0.7", interval(0.0, 1.0), vec![0.7]),
        ("cubic-1d", interval(2.0, 3.0), vec![2.094_551_481_542_327]),
        (
            "shifted-identity-2d",
            Simplex::from_coords(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
            vec![0.25, 0.25],
        ),
    ];
    for (name, s0, root) in cases {
        let f = lookup(name).unwrap();
        let trace = solve(&f, &s0, 1e-8, 500).unwrap();
        assert!(trace.converged, "{name}");
        let x = trace.final_approximation.coords();
        let err: f64 = x
            .iter()
            .zip(&root)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(err <= trace.final_error_estimate, "{name}: {err}");
        assert_eq!(f.dimension(), root.len());
    }
}

#[test]
fn three_dimensional_separable_system() {
    let f = lookup("separable-cubic-3d").unwrap();
    let s0 = Simplex::from_coords(vec![
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])
    .unwrap();
    match solve(&f, &s0, 1e-4, 400) {
        Ok(trace) => {
            let x = trace.final_approximation.coords();
            let root = [0.1, 0.2, 0.3];
            let err: f64 = x
                .iter()
                .zip(root)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(
                !trace.converged || err <= trace.final_error_estimate,
                "{err}"
            );
        }
        // The sign test is necessary, not sufficient: losing the root is reported, not hidden.
        Err(e) => assert!(matches!(e, GeomError::NoSignCriterion { .. })),
    }
}
