//! First-kind kernels.
//!
//! `DrugFlux` is the boundary-flux kernel of the sealed slab,
//! `k(x, t) = Σ_k (-1)^k λ_k e^{-λ_k² t} cos(λ_k x)` with `λ_k = (k + ½)π`,
//! truncated on its term envelope. The two exponential kernels are the
//! classical smooth test operators on the unit square.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

pub const DEFAULT_SERIES_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    DrugFlux,
    /// `(1 + ts) e^{ts}`
    GradientExp,
    /// `e^{ts}`
    PlainExp,
}

/// Truncation control for the cosine-mode series shared by the kernel and the forward solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub tolerance: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_SERIES_TOLERANCE,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl SeriesControl {
    pub fn new(tolerance: f64, max_terms: usize) -> Result<Self> {
        let ctl = Self { tolerance, max_terms };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(domain(format!(
                "series tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_terms < 1 {
            return Err(domain("series needs at least one term"));
        }
        Ok(())
    }

    /// Number of modes needed at time `t`.
    ///
    /// Counts modes until the envelope `λ_K e^{-λ_K² t}` is past its peak and
    /// below the tolerance. Errors with the achieved envelope if `max_terms` is
    /// reached first.
    pub fn terms_at(&self, t: f64) -> Result<usize> {
        if t.is_nan() || t <= 0.0 {
            return Err(domain(format!("mode series diverges at t = {t}; need t > 0")));
        }
        // envelope z e^{-z² t} decreases once z > 1/sqrt(2t)
        let peak = (0.5 / t).sqrt();
        for k in 0..=self.max_terms {
            let z = mode_frequency(k);
            if z > peak && envelope(k, t) < self.tolerance {
                return Ok(k);
            }
        }
        Err(Error::Budget {
            terms: self.max_terms,
            achieved: envelope(self.max_terms, t),
            tolerance: self.tolerance,
        })
    }
}

/// `(k + ½)π`
#[inline]
pub fn mode_frequency(k: usize) -> f64 {
    (k as f64 + 0.5) * PI
}

#[inline]
fn envelope(k: usize, t: f64) -> f64 {
    let z = mode_frequency(k);
    z * (-z * z * t).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub series: SeriesControl,
}

impl KernelSpec {
    pub fn new(kind: KernelKind) -> Self {
        Self {
            kind,
            series: SeriesControl::default(),
        }
    }

    pub fn drug_flux(series: SeriesControl) -> Self {
        Self {
            kind: KernelKind::DrugFlux,
            series,
        }
    }

    /// Leading factor of the integral operator: 2 for the flux operator, 1 otherwise.
    pub fn prefactor(&self) -> f64 {
        match self.kind {
            KernelKind::DrugFlux => 2.0,
            KernelKind::GradientExp | KernelKind::PlainExp => 1.0,
        }
    }
}

pub fn kernel_value(spec: &KernelSpec, s: f64, t: f64) -> Result<f64> {
    match spec.kind {
        KernelKind::GradientExp => Ok((1.0 + t * s) * (t * s).exp()),
        KernelKind::PlainExp => Ok((t * s).exp()),
        KernelKind::DrugFlux => {
            spec.series.validate()?;
            let terms = spec.series.terms_at(t)?;
            Ok(drug_flux_partial_sum(s, t, terms))
        }
    }
}

pub(crate) fn drug_flux_partial_sum(x: f64, t: f64, terms: usize) -> f64 {
    (0..terms)
        .map(|k| {
            let z = mode_frequency(k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * z * (-z * z * t).exp() * (z * x).cos()
        })
        .sum()
}
