//! Spectral regularization: singular system, filter functions, the filtered
//! solve and the a-priori parameter rule.

mod filter;
mod svd;

pub use filter::{filter_value, FilterFamily, FilterShape, FilterSpec, DEFAULT_R, DEFAULT_SIGMA};
pub use svd::{decompose, decompose_with, SvdSystem, DEFAULT_DROP_TOLERANCE};

use crate::error::{domain, Result};

/// `x = Σ q(α, μ_i)/μ_i ⟨b, y_i⟩ x_i`.
pub fn solve_filtered(svd: &SvdSystem, b: &[f64], spec: &FilterSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let beta = svd.coefficients(b)?;
    Ok(solve_from_coefficients(svd, &beta, spec))
}

pub(crate) fn solve_from_coefficients(svd: &SvdSystem, beta: &[f64], spec: &FilterSpec) -> Vec<f64> {
    let scaled: Vec<f64> = beta
        .iter()
        .zip(svd.values())
        .map(|(b, &mu)| filter::raw_filter(spec, mu) / mu * b)
        .collect();
    svd.combine_right(&scaled)
}

/// Parameters of the a-priori choice `α(δ) = c (δ/E)^{σr/(2v+1)}`.
///
/// `smoothness` is the source-condition exponent `v` in `x⁺ = (K*K)^v z`
/// and `source_bound` the bound `E ≥ ‖z‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AprioriRule {
    pub smoothness: f64,
    pub source_bound: f64,
    pub constant: f64,
    pub sigma: f64,
    pub r: f64,
}

impl AprioriRule {
    pub fn new(smoothness: f64, source_bound: f64, constant: f64, sigma: f64, r: f64) -> Result<Self> {
        for (name, v) in [
            ("smoothness", smoothness),
            ("source bound", source_bound),
            ("constant", constant),
            ("sigma", sigma),
            ("r", r),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("a-priori {name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            smoothness,
            source_bound,
            constant,
            sigma,
            r,
        })
    }

    /// Rate exponent `2v/(2v+1)` of the resulting error bound.
    pub fn rate(&self) -> f64 {
        2.0 * self.smoothness / (2.0 * self.smoothness + 1.0)
    }
}

pub fn apriori_alpha(rule: &AprioriRule, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(domain(format!("noise level must be positive, got {delta}")));
    }
    let exponent = rule.sigma * rule.r / (2.0 * rule.smoothness + 1.0);
    Ok(rule.constant * (delta / rule.source_bound).powf(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn diag_system() -> SvdSystem {
        decompose(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.1])).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn classical_diagonal() {
        let x = solve_filtered(&diag_system(), &[1.0, 0.1], &FilterSpec::classical(0.01)).unwrap();
        assert_close(&x, &[1.0 / 1.01, 0.5], 1e-14);
    }

    #[test]
    fn modified_passes_large_values_through() {
        let x = solve_filtered(&diag_system(), &[1.0, 0.1], &FilterSpec::modified(0.01, 1.0, 1.0)).unwrap();
        assert_close(&x, &[1.0, 1.0], 1e-14);
    }

    #[test]
    fn modified_damps_small_values() {
        let x = solve_filtered(&diag_system(), &[1.0, 0.1], &FilterSpec::modified(0.2, 1.0, 1.0)).unwrap();
        assert_close(&x, &[1.0, 1.0 / 3.0], 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(solve_filtered(&diag_system(), &[1.0, 0.1, 3.0], &FilterSpec::classical(1.0)).is_err());
    }

    #[test]
    fn apriori_examples() {
        let a = apriori_alpha(&AprioriRule::new(0.5, 1.0, 1.0, 1.0, 2.0).unwrap(), 1e-3).unwrap();
        assert!((a - 1e-3).abs() < 1e-15);
        let a = apriori_alpha(&AprioriRule::new(1.0, 1.0, 1.0, 2.0, 1.0).unwrap(), 1e-3).unwrap();
        assert!((a - 1e-2).abs() < 1e-15);
        let a = apriori_alpha(&AprioriRule::new(0.5, 10.0, 2.0, 1.0, 1.0).unwrap(), 0.1).unwrap();
        assert!((a - 0.2).abs() < 1e-15);
    }

    #[test]
    fn apriori_rejects_bad_inputs() {
        let rule = AprioriRule::new(1.0, 1.0, 1.0, 2.0, 1.0).unwrap();
        assert!(apriori_alpha(&rule, 0.0).is_err());
        assert!(apriori_alpha(&rule, -1e-3).is_err());
        assert!(AprioriRule::new(0.0, 1.0, 1.0, 2.0, 1.0).is_err());
    }
}
