//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use std::cell::RefCell;

use laminate::lcurve::default_alphas;
use laminate::prelude::*;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

thread_local! {
    // assembling and decomposing is the slow part, so keep one per scenario
    static PROBLEMS: RefCell<Vec<Problem>> = const { RefCell::new(Vec::new()) };
}

fn with_problem<T>(scenario: ScenarioId, f: impl FnOnce(&Problem) -> Result<T, String>) -> Result<T, String> {
    PROBLEMS.with(|cell| {
        let mut cache = cell.borrow_mut();
        let index = match cache.iter().position(|p| p.scenario == scenario) {
            Some(i) => i,
            None => {
                cache.push(Problem::with_defaults(scenario).map_err(|e| e.to_string())?);
                cache.len() - 1
            }
        };
        f(&cache[index])
    })
}

fn parse_scenario(name: &str) -> Result<ScenarioId, String> {
    name.parse().map_err(|e: laminate::Error| e.to_string())
}

fn parse_family(name: &str) -> Result<FilterFamily, String> {
    name.parse().map_err(|e: laminate::Error| e.to_string())
}

fn noise(delta: f64, seed: u32) -> Result<NoiseSpec, String> {
    NoiseSpec::new(delta, u64::from(seed)).map_err(|e| e.to_string())
}

/// All four filter functions on `points` log-spaced `μ ∈ [1e-4, 10]`.
pub fn filter_curves_json(alpha: f64, sigma: f64, r: f64, points: usize) -> Result<String, String> {
    if points < 2 {
        return Err("need at least two points".into());
    }
    let mu: Vec<f64> = (0..points)
        .map(|i| 10f64.powf(-4.0 + 5.0 * i as f64 / (points - 1) as f64))
        .collect();
    let mut curves = serde_json::Map::new();
    for family in FilterFamily::ALL {
        let spec = FilterShape::new(family, sigma, r)
            .map_err(|e| e.to_string())?
            .with_alpha(alpha);
        let q = mu
            .iter()
            .map(|&m| filter_value(&spec, m))
            .collect::<Result<Vec<f64>, laminate::Error>>()
            .map_err(|e| e.to_string())?;
        curves.insert(family.label().into(), json!(q));
    }
    Ok(json!({ "mu": mu, "curves": curves }).to_string())
}

fn shape(method: &str, sigma: f64, r: f64) -> Result<FilterShape, String> {
    FilterShape::new(parse_family(method)?, sigma, r).map_err(|e| e.to_string())
}

/// L-curve over the default sweep with the corner index (or `null`).
pub fn lcurve_json(scenario: &str, method: &str, sigma: f64, r: f64, delta: f64, seed: u32) -> Result<String, String> {
    let scenario = parse_scenario(scenario)?;
    let shape = shape(method, sigma, r)?;
    let noise = noise(delta, seed)?;
    with_problem(scenario, |p| {
        let rhs = p.noisy_rhs(&noise);
        let curve = sweep(&p.svd, &rhs, &shape, &default_alphas()).map_err(|e| e.to_string())?;
        let corner = find_corner(&curve).ok();
        Ok(json!({
            "alpha": curve.alphas,
            "residual": curve.residual_norms,
            "solution": curve.solution_norms,
            "corner": corner,
        })
        .to_string())
    })
}

/// Full inversion with L-curve selection; returns profile, fluxes and MSD.
pub fn inversion_json(
    scenario: &str,
    method: &str,
    sigma: f64,
    r: f64,
    delta: f64,
    seed: u32,
) -> Result<String, String> {
    let scenario = parse_scenario(scenario)?;
    let shape = shape(method, sigma, r)?;
    let noise = noise(delta, seed)?;
    with_problem(scenario, |p| {
        let report = p.run(&shape, &noise, &Selection::lcurve()).map_err(|e| e.to_string())?;
        let truth: Value = match scenario.example() {
            Some(_) => json!(report
                .grids
                .source
                .nodes()
                .iter()
                .map(|&s| scenario.true_solution(s))
                .collect::<Vec<_>>()),
            None => Value::Null,
        };
        Ok(json!({
            "x": report.grids.source.nodes(),
            "profile": report.profile.values(),
            "truth": truth,
            "t": report.grids.obs.nodes(),
            "desired": report.desired,
            "achieved": report.achieved,
            "alpha": report.filter.alpha,
            "selection": report.selection.to_string(),
            "msd": report.msd,
            "solution_error": report.solution_error,
            "negative_nodes": report.negative_nodes(),
        })
        .to_string())
    })
}

#[wasm_bindgen]
pub fn filter_curves(alpha: f64, sigma: f64, r: f64, points: u32) -> Result<String, JsValue> {
    filter_curves_json(alpha, sigma, r, points as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lcurve(scenario: &str, method: &str, sigma: f64, r: f64, delta: f64, seed: u32) -> Result<String, JsValue> {
    lcurve_json(scenario, method, sigma, r, delta, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn invert(scenario: &str, method: &str, sigma: f64, r: f64, delta: f64, seed: u32) -> Result<String, JsValue> {
    inversion_json(scenario, method, sigma, r, delta, seed).map_err(|e| JsValue::from_str(&e))
}
