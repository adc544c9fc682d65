//! The centroid, corner and grid checks are compared against a brute-force
//! numerical oracle built only from breakpoints.

use fihr::fuzzy::{FuzzyConfig, FuzzyVariable, MembershipFunction, COMR_LABELS, DISTANCE_LABELS, ENERGY_LABELS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const E_INIT: f64 = 3.0;
const D_MAX: f64 = 50.0 * std::f64::consts::SQRT_2;
const R_MAX: f64 = 25.0;

fn controller() -> FuzzyConfig {
    FuzzyConfig::with_defaults(E_INIT, D_MAX, R_MAX).unwrap()
}

// Written out from the breakpoints rather than calling `eval`.
fn oracle_grade(mf: &MembershipFunction, x: f64) -> f64 {
    match *mf {
        MembershipFunction::Triangular { left, peak, right } => {
            let up = (x - left) / (peak - left);
            let down = (right - x) / (right - peak);
            up.min(down).max(0.0)
        }
        MembershipFunction::LeftShoulder { a, b } => ((b - x) / (b - a)).clamp(0.0, 1.0),
        MembershipFunction::RightShoulder { c, d } => ((x - c) / (d - c)).clamp(0.0, 1.0),
    }
}

fn oracle_centroid(var: &FuzzyVariable, clips: &[f64], samples: usize) -> f64 {
    let (lo, hi) = var.universe();
    let h = (hi - lo) / samples as f64;
    let mu = |x: f64| var.terms().iter().zip(clips).map(|(t, &c)| c.min(oracle_grade(&t.mf, x))).fold(0.0, f64::max);
    let (mut area, mut moment) = (0.0, 0.0);
    for i in 0..=samples {
        let x = lo + i as f64 * h;
        let w = if i == 0 || i == samples { 0.5 } else { 1.0 };
        let m = mu(x);
        area += w * m;
        moment += w * m * x;
    }
    moment / area
}

fn one_hot(len: usize, idx: usize) -> Vec<f64> {
    let mut v = vec![0.0; len];
    v[idx] = 1.0;
    v
}

#[test]
fn centroid_matches_trapezoid_oracle_on_random_clips() {
    let cfg = controller();
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let clips: Vec<f64> =
            (0..9).map(|_| if rng.random::<f64>() < 0.4 { 0.0 } else { rng.random::<f64>() }).collect();
        let clips = if clips.iter().all(|&c| c == 0.0) { one_hot(9, case % 9) } else { clips };
        let out = fihr::fuzzy::AggregatedOutput::new(&cfg.comr, clips.clone()).unwrap();
        let exact = out.centroid().unwrap();
        let oracle = oracle_centroid(&cfg.comr, &clips, 100_000);
        let rel = ((exact - oracle) / oracle).abs();
        worst = worst.max(rel);
        assert!(rel <= 1e-6, "case {case}: clips {clips:?} exact {exact} oracle {oracle} rel {rel:e}");
    }
    eprintln!("worst relative centroid error: {worst:e}");
}

#[test]
fn single_rule_yields_consequent_centroid() {
    let cfg = controller();
    let step = R_MAX / 8.0;
    for (d, _) in DISTANCE_LABELS.iter().enumerate() {
        for (e, _) in ENERGY_LABELS.iter().enumerate() {
            let consequent = 3 * d + e;
            let out = cfg.infer(&one_hot(3, e), &one_hot(3, d)).unwrap();
            let expected = match consequent {
                0 => step / 3.0,
                8 => R_MAX - step / 3.0,
                k => k as f64 * step,
            };
            let got = out.centroid().unwrap();
            assert!(
                ((got - expected) / expected).abs() < 1e-12,
                "{}: got {got}, expected {expected}",
                COMR_LABELS[consequent]
            );
        }
    }
}

#[test]
fn corners_increase_along_consequent_order() {
    let cfg = controller();
    let energy_at = [0.0, 0.5 * E_INIT, E_INIT];
    let distance_at = [0.0, 0.5 * D_MAX, D_MAX];
    let mut by_consequent = vec![f64::NAN; 9];
    for (d, &dv) in distance_at.iter().enumerate() {
        for (e, &ev) in energy_at.iter().enumerate() {
            by_consequent[3 * d + e] = cfg.compute_comr(ev, dv).unwrap();
        }
    }
    for w in by_consequent.windows(2) {
        assert!(w[0] < w[1], "{by_consequent:?}");
    }
}

#[test]
fn dominant_consequent_is_monotone_on_grid() {
    let cfg = controller();
    let n = 50;
    let grid: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let e = E_INIT * i as f64 / (n - 1) as f64;
            (0..n)
                .map(|j| {
                    let d = D_MAX * j as f64 / (n - 1) as f64;
                    let eg = cfg.energy.fuzzify(e);
                    let dg = cfg.distance.fuzzify(d);
                    cfg.infer(&eg, &dg).unwrap().dominant_term()
                })
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i + 1 < n {
                assert!(grid[i][j] <= grid[i + 1][j], "energy step at ({i},{j})");
            }
            if j + 1 < n {
                assert!(grid[i][j] <= grid[i][j + 1], "distance step at ({i},{j})");
            }
        }
    }
}

#[test]
fn inference_is_deterministic() {
    let a = controller();
    let b = controller();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let e = rng.random::<f64>() * E_INIT * 1.2 - 0.1;
        let d = rng.random::<f64>() * D_MAX * 1.2 - 0.1;
        let x = a.compute_comr(e, d).unwrap();
        assert_eq!(x.to_bits(), a.compute_comr(e, d).unwrap().to_bits());
        assert_eq!(x.to_bits(), b.compute_comr(e, d).unwrap().to_bits());
        assert!((0.0..=R_MAX).contains(&x));
    }
}
