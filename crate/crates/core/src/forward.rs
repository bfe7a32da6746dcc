//! Separation-of-variables solution of the sealed-slab diffusion problem.
//!
//! With `λ_k = (k + ½)π` and `a_k = ∫ v(x) cos(λ_k x) dx`:
//!
//! ```text
//! c(t, x) = Σ 2 e^{-λ_k² t} cos(λ_k x) a_k
//! j(t)    = Σ 2 (-1)^k λ_k e^{-λ_k² t} a_k
//! ```
//!
//! Coefficients are trapezoid integrals over the profile's own grid, so this
//! path never touches the assembled inverse-problem matrix.

use crate::error::{domain, Result};
use crate::kernel::{mode_frequency, SeriesControl};
use crate::model::{ConcentrationProfile, Grid1D, ReleaseProfile};

pub fn fourier_coefficients(v: &ConcentrationProfile, terms: usize) -> Result<Vec<f64>> {
    if terms < 1 {
        return Err(domain("need at least one Fourier coefficient"));
    }
    let grid = v.grid();
    Ok((0..terms)
        .map(|k| {
            let z = mode_frequency(k);
            grid.nodes()
                .iter()
                .zip(grid.weights())
                .zip(v.values())
                .map(|((&x, &w), &val)| w * val * (z * x).cos())
                .sum()
        })
        .collect())
}

pub fn concentration(v: &ConcentrationProfile, t: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("position {x} outside [0, 1]")));
    }
    ctl.validate()?;
    let terms = ctl.terms_at(t)?.max(1);
    let coeffs = fourier_coefficients(v, terms)?;
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let z = mode_frequency(k);
            2.0 * (-z * z * t).exp() * (z * x).cos() * a
        })
        .sum())
}

pub fn flux(v: &ConcentrationProfile, t_grid: &Grid1D, ctl: &SeriesControl) -> Result<ReleaseProfile> {
    if t_grid.lower() <= 0.0 {
        return Err(domain(format!(
            "flux series needs t > 0, grid starts at {}",
            t_grid.lower()
        )));
    }
    ctl.validate()?;
    // the earliest time needs the most modes
    let max_terms = ctl.terms_at(t_grid.lower())?.max(1);
    let coeffs = fourier_coefficients(v, max_terms)?;
    let values = t_grid
        .nodes()
        .iter()
        .map(|&t| {
            let terms = ctl.terms_at(t)?;
            Ok(flux_partial_sum(&coeffs[..terms.min(max_terms)], t))
        })
        .collect::<Result<Vec<f64>>>()?;
    ReleaseProfile::new(t_grid.clone(), values)
}

fn flux_partial_sum(coeffs: &[f64], t: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let z = mode_frequency(k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            2.0 * sign * z * (-z * z * t).exp() * a
        })
        .sum()
}

/// `C` in `|j(t)| ≤ C e^{-(π/2)² t}`: `Σ 2 λ_k |a_k|`.
pub fn decay_constant(coeffs: &[f64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| 2.0 * mode_frequency(k) * a.abs())
        .sum()
}
