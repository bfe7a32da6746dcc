#![allow(dead_code)]

use laminate::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Geometric spectrum `μ_i = 10^{-i/20}`, `i = 0..=400`.
pub fn geometric_spectrum() -> Vec<f64> {
    (0..=400).map(|i| 10f64.powf(-(i as f64) / 20.0)).collect()
}

/// Diagonal test operator with `x⁺ = (K*K)^v z`, `‖z‖ = E`, and a fixed unit noise direction.
pub struct SourceConditionProblem {
    pub svd: SvdSystem,
    pub exact: Vec<f64>,
    pub rhs: Vec<f64>,
    pub noise_direction: Vec<f64>,
    pub source_bound: f64,
}

impl SourceConditionProblem {
    pub fn new(smoothness: f64, source_bound: f64, seed: u64) -> Self {
        let mu = geometric_spectrum();
        let n = mu.len();
        let z = vec![source_bound / (n as f64).sqrt(); n];
        let exact: Vec<f64> = mu.iter().zip(&z).map(|(m, zi)| m.powf(2.0 * smoothness) * zi).collect();
        let rhs: Vec<f64> = mu.iter().zip(&exact).map(|(m, x)| m * x).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
        e.iter_mut().for_each(|v| *v /= norm);
        Self {
            svd: SvdSystem::diagonal(mu).unwrap(),
            exact,
            rhs,
            noise_direction: e,
            source_bound,
        }
    }

    pub fn noisy(&self, delta: f64) -> Vec<f64> {
        self.rhs
            .iter()
            .zip(&self.noise_direction)
            .map(|(b, e)| b + delta * e)
            .collect()
    }

    pub fn error(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(&self.exact)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Compares `actual` against `tests/golden/<name>`, recording it on first run.
pub fn check_golden(name: &str, actual: &str) {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    match std::fs::read_to_string(&path) {
        Ok(expected) => assert_eq!(expected, actual, "golden {name} changed"),
        Err(_) => {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, actual).unwrap();
        }
    }
}
