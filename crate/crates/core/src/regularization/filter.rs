//! Regularizing filter functions `q(α, μ)`.
//!
//! | family             | `q(α, μ)`                                         |
//! |--------------------|---------------------------------------------------|
//! | `ClassicalTikhonov`| `μ² / (α + μ²)`                                   |
//! | `Tsvd`             | `1` if `μ ≥ α`, else `0`                          |
//! | `LiFilter`         | `μ^σ / (α + μ^{σr})^{1/r}`                        |
//! | `ModifiedTikhonov` | `1` if `μ^{σr} ≥ α`, else the `LiFilter` value    |
//!
//! The modified filter leaves every component with `μ^{σr} ≥ α` untouched and
//! damps only the small singular values. It satisfies `0 ≤ q ≤ 1`,
//! `q ≤ μ α^{-1/(σr)}` and `q → 1` as `α → 0`, which makes
//! `R_α b = Σ q(α, μ_i)/μ_i ⟨b, y_i⟩ x_i` a regularization strategy with
//! `‖R_α‖ ≤ α^{-1/(σr)}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Result};

pub const DEFAULT_SIGMA: f64 = 2.0;
pub const DEFAULT_R: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterFamily {
    ClassicalTikhonov,
    Tsvd,
    LiFilter,
    ModifiedTikhonov,
}

impl FilterFamily {
    pub const ALL: [FilterFamily; 4] = [
        FilterFamily::ClassicalTikhonov,
        FilterFamily::Tsvd,
        FilterFamily::LiFilter,
        FilterFamily::ModifiedTikhonov,
    ];

    /// Short method label used in reports (`trm`, `tsvd`, `li`, `mtrm`).
    pub fn label(self) -> &'static str {
        match self {
            FilterFamily::ClassicalTikhonov => "trm",
            FilterFamily::Tsvd => "tsvd",
            FilterFamily::LiFilter => "li",
            FilterFamily::ModifiedTikhonov => "mtrm",
        }
    }

    pub fn uses_exponents(self) -> bool {
        matches!(self, FilterFamily::LiFilter | FilterFamily::ModifiedTikhonov)
    }
}

impl fmt::Display for FilterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FilterFamily {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trm" | "tikhonov" | "classical" => Ok(FilterFamily::ClassicalTikhonov),
            "tsvd" => Ok(FilterFamily::Tsvd),
            "li" => Ok(FilterFamily::LiFilter),
            "mtrm" | "modified" => Ok(FilterFamily::ModifiedTikhonov),
            other => Err(domain(format!("unknown filter family {other:?}"))),
        }
    }
}

/// A filter family with its exponents but no `α` yet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterShape {
    pub family: FilterFamily,
    pub sigma: f64,
    pub r: f64,
}

impl FilterShape {
    pub fn new(family: FilterFamily, sigma: f64, r: f64) -> Result<Self> {
        let shape = Self { family, sigma, r };
        shape.validate()?;
        Ok(shape)
    }

    /// Family with the default exponents `σ = 2`, `r = 1`.
    pub fn of(family: FilterFamily) -> Self {
        Self {
            family,
            sigma: DEFAULT_SIGMA,
            r: DEFAULT_R,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.family.uses_exponents() {
            if !(self.sigma >= 1.0 && self.sigma.is_finite()) {
                return Err(domain(format!("sigma must be >= 1, got {}", self.sigma)));
            }
            if !(self.r > 0.0 && self.r.is_finite()) {
                return Err(domain(format!("r must be > 0, got {}", self.r)));
            }
        }
        Ok(())
    }

    pub fn with_alpha(&self, alpha: f64) -> FilterSpec {
        FilterSpec {
            family: self.family,
            alpha,
            sigma: self.sigma,
            r: self.r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub family: FilterFamily,
    pub alpha: f64,
    pub sigma: f64,
    pub r: f64,
}

impl FilterSpec {
    pub fn classical(alpha: f64) -> Self {
        FilterShape::of(FilterFamily::ClassicalTikhonov).with_alpha(alpha)
    }

    pub fn tsvd(alpha: f64) -> Self {
        FilterShape::of(FilterFamily::Tsvd).with_alpha(alpha)
    }

    pub fn li(alpha: f64, sigma: f64, r: f64) -> Self {
        FilterSpec {
            family: FilterFamily::LiFilter,
            alpha,
            sigma,
            r,
        }
    }

    pub fn modified(alpha: f64, sigma: f64, r: f64) -> Self {
        FilterSpec {
            family: FilterFamily::ModifiedTikhonov,
            alpha,
            sigma,
            r,
        }
    }

    pub fn shape(&self) -> FilterShape {
        FilterShape {
            family: self.family,
            sigma: self.sigma,
            r: self.r,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(domain(format!("alpha must be positive, got {}", self.alpha)));
        }
        self.shape().validate()
    }

    /// Operator-norm bound `c(α)` with `q(α, μ) ≤ c(α) μ`.
    pub fn norm_bound(&self) -> f64 {
        match self.family {
            FilterFamily::ClassicalTikhonov => 0.5 / self.alpha.sqrt(),
            FilterFamily::Tsvd => 1.0 / self.alpha,
            FilterFamily::LiFilter | FilterFamily::ModifiedTikhonov => self.alpha.powf(-1.0 / (self.sigma * self.r)),
        }
    }
}

pub fn filter_value(spec: &FilterSpec, mu: f64) -> Result<f64> {
    if mu.is_nan() || mu <= 0.0 {
        return Err(domain(format!("singular value must be positive, got {mu}")));
    }
    spec.validate()?;
    Ok(raw_filter(spec, mu))
}

/// Filter value without argument checks; `spec` must be valid and `mu > 0`.
pub(crate) fn raw_filter(spec: &FilterSpec, mu: f64) -> f64 {
    let alpha = spec.alpha;
    match spec.family {
        FilterFamily::ClassicalTikhonov => 1.0 / (1.0 + alpha / (mu * mu)),
        FilterFamily::Tsvd => {
            if mu >= alpha {
                1.0
            } else {
                0.0
            }
        }
        FilterFamily::LiFilter => li(alpha, mu, spec.sigma, spec.r),
        FilterFamily::ModifiedTikhonov => {
            if mu.powf(spec.sigma * spec.r) >= alpha {
                1.0
            } else {
                li(alpha, mu, spec.sigma, spec.r)
            }
        }
    }
}

// μ^σ / (α + μ^{σr})^{1/r} = (1 + α μ^{-σr})^{-1/r}
#[inline]
fn li(alpha: f64, mu: f64, sigma: f64, r: f64) -> f64 {
    (1.0 + alpha * mu.powf(-sigma * r)).powf(-1.0 / r)
}
