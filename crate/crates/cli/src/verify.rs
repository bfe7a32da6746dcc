//! Property suites behind `laminate verify`.

use std::f64::consts::PI;
use std::fmt;

use laminate::forward::decay_constant;
use laminate::prelude::*;
use laminate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::SuiteArg;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

pub fn run_suite(suite: SuiteArg, seed: u64, samples: usize) -> Result<Vec<Check>> {
    match suite {
        SuiteArg::Filters => filters(seed, samples),
        SuiteArg::Rate => rate(seed),
        SuiteArg::Quadrature => quadrature(),
        SuiteArg::Forward => forward(),
        SuiteArg::All => {
            let mut all = filters(seed, samples)?;
            all.extend(rate(seed)?);
            all.extend(quadrature()?);
            all.extend(forward()?);
            Ok(all)
        }
    }
}

const SIGMAS: [f64; 3] = [1.0, 2.0, 3.0];
const RS: [f64; 3] = [0.5, 1.0, 2.0];

/// Filter-function properties over random `(α, μ, σ, r)`, `α, μ ∈ (0, 10]`.
pub fn filters(seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut range, mut bound, mut branch, mut family_bound, mut monotone) = (0, 0, 0, 0, 0);
    for _ in 0..samples {
        let alpha = 10.0 - rng.gen_range(0.0..10.0);
        let mu = 10.0 - rng.gen_range(0.0..10.0);
        let sigma = SIGMAS[rng.gen_range(0..SIGMAS.len())];
        let r = RS[rng.gen_range(0..RS.len())];
        let spec = FilterSpec::modified(alpha, sigma, r);
        let q = filter_value(&spec, mu)?;
        range += usize::from(!(0.0..=1.0).contains(&q));
        bound += usize::from(q > mu * alpha.powf(-1.0 / (sigma * r)) * (1.0 + 1e-12));
        branch += usize::from(mu.powf(sigma * r) >= alpha && q != 1.0);

        let smaller = alpha * rng.gen_range(0.0..1.0);
        for family in FilterFamily::ALL {
            let shape = FilterShape::new(family, sigma, r)?;
            let s = shape.with_alpha(alpha);
            let q = filter_value(&s, mu)?;
            family_bound += usize::from(!(0.0..=1.0).contains(&q) || q > s.norm_bound() * mu * (1.0 + 1e-12));
            if smaller > 0.0 && family != FilterFamily::Tsvd {
                monotone += usize::from(filter_value(&shape.with_alpha(smaller), mu)? < q);
            }
        }
    }
    let detail = |v: usize| format!("{v} violations in {samples} samples");
    Ok(vec![
        Check::new("modified filter in [0, 1]", range == 0, detail(range)),
        Check::new(
            "modified filter below mu*alpha^(-1/(sigma r))",
            bound == 0,
            detail(bound),
        ),
        Check::new(
            "modified filter is 1 when mu^(sigma r) >= alpha",
            branch == 0,
            detail(branch),
        ),
        Check::new("all families bounded", family_bound == 0, detail(family_bound)),
        Check::new("filters grow as alpha shrinks", monotone == 0, detail(monotone)),
    ])
}

/// Diagonal operator `μ_i = 10^{-i/20}` with `x⁺ = (K*K)^v z`, `‖z‖ = E`.
pub struct SourceCondition {
    pub svd: SvdSystem,
    pub exact: Vec<f64>,
    pub rhs: Vec<f64>,
    noise: Vec<f64>,
}

impl SourceCondition {
    pub fn new(smoothness: f64, source_bound: f64, seed: u64) -> Result<Self> {
        let mu: Vec<f64> = (0..=400).map(|i| 10f64.powf(-(i as f64) / 20.0)).collect();
        let z = source_bound / (mu.len() as f64).sqrt();
        let exact: Vec<f64> = mu.iter().map(|m| m.powf(2.0 * smoothness) * z).collect();
        let rhs = mu.iter().zip(&exact).map(|(m, x)| m * x).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut noise: Vec<f64> = (0..mu.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = noise.iter().map(|v| v * v).sum::<f64>().sqrt();
        noise.iter_mut().for_each(|v| *v /= norm);
        Ok(Self {
            svd: SvdSystem::diagonal(mu)?,
            exact,
            rhs,
            noise,
        })
    }

    /// `‖x_α^δ − x⁺‖` for data with `‖b̃ − b‖ = δ`.
    pub fn error(&self, spec: &FilterSpec, delta: f64) -> Result<f64> {
        let b: Vec<f64> = self.rhs.iter().zip(&self.noise).map(|(b, e)| b + delta * e).collect();
        let x = solve_filtered(&self.svd, &b, spec)?;
        Ok(x.iter()
            .zip(&self.exact)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }
}

pub const RATE_DELTAS: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

/// Least-squares slope of `ln y` on `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Measured error-vs-δ slope under the a-priori rule, with its target.
pub fn measured_rate(smoothness: f64, seed: u64) -> Result<(f64, f64, bool)> {
    let problem = SourceCondition::new(smoothness, 1.0, seed)?;
    let rule = AprioriRule::new(smoothness, 1.0, 1.0, 2.0, 1.0)?;
    let mut errors = Vec::new();
    let mut bounded = true;
    for delta in RATE_DELTAS {
        let alpha = apriori_alpha(&rule, delta)?;
        let err = problem.error(&FilterSpec::modified(alpha, 2.0, 1.0), delta)?;
        bounded &= err <= alpha.powf(-0.5) * delta + alpha.powf(smoothness);
        errors.push(err);
    }
    Ok((loglog_slope(&RATE_DELTAS, &errors), rule.rate(), bounded))
}

pub fn rate(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (v, name) in [(0.5, "rate v=0.5"), (1.0, "rate v=1")] {
        let (slope, target, bounded) = measured_rate(v, seed)?;
        checks.push(Check::new(
            name,
            (slope - target).abs() <= 0.15 && bounded,
            format!(
                "slope {slope:.4}, target {target:.4}, error bound {}",
                if bounded { "held" } else { "broken" }
            ),
        ));
    }
    Ok(checks)
}

/// Max error of `A x` against the exact right-hand side on an `n × n` grid.
pub fn example_consistency(example: FredholmExample, n: usize) -> Result<f64> {
    let g = Grid1D::new(0.0, 1.0, n)?;
    let sys = assemble(&example.kernel(), &g, &g)?;
    let x: Vec<f64> = g.nodes().iter().map(|&s| example.solution_value(s)).collect();
    Ok(sys
        .apply(&x)
        .iter()
        .zip(exact_rhs(example, &g))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Max error of the flux matrix on `cos(πx/2)` against `(π/2)e^{-(π/2)² t}`.
pub fn eigenmode_error(n: usize, m: usize) -> Result<f64> {
    let src = Grid1D::new(0.0, 1.0, n)?;
    let obs = Grid1D::new(0.5 / m as f64, 0.5, m)?;
    let sys = assemble(&KernelSpec::new(KernelKind::DrugFlux), &src, &obs)?;
    let v: Vec<f64> = src.nodes().iter().map(|x| (PI * x / 2.0).cos()).collect();
    Ok(sys
        .apply(&v)
        .iter()
        .zip(obs.nodes())
        .map(|(a, t)| (a - PI / 2.0 * (-(PI / 2.0).powi(2) * t).exp()).abs())
        .fold(0.0, f64::max))
}

fn ratio_check(name: &'static str, coarse: f64, fine: f64) -> Check {
    let ratio = coarse / fine;
    Check::new(
        name,
        (3.5..=4.5).contains(&ratio),
        format!("errors {coarse:.3e} -> {fine:.3e}, ratio {ratio:.3}"),
    )
}

pub fn quadrature() -> Result<Vec<Check>> {
    let trap = |n: usize| -> Result<f64> {
        let g = Grid1D::new(0.0, 1.0, n)?;
        Ok((g.integrate_fn(f64::exp) - (std::f64::consts::E - 1.0)).abs())
    };
    Ok(vec![
        ratio_check("trapezoid on exp", trap(51)?, trap(101)?),
        ratio_check(
            "example 1 forward consistency",
            example_consistency(FredholmExample::Ex41, 51)?,
            example_consistency(FredholmExample::Ex41, 101)?,
        ),
        ratio_check(
            "example 2 forward consistency",
            example_consistency(FredholmExample::Ex42, 51)?,
            example_consistency(FredholmExample::Ex42, 101)?,
        ),
    ])
}

pub fn forward() -> Result<Vec<Check>> {
    let ctl = SeriesControl::default();
    let mut checks = Vec::new();

    let err = eigenmode_error(100, 100)?;
    checks.push(Check::new(
        "flux matrix on eigenmode",
        err < 1e-3,
        format!("max error {err:.3e}"),
    ));

    let src = Grid1D::new(0.0, 1.0, 100)?;
    let obs = Grid1D::new(0.005, 0.5, 100)?;
    let sys = assemble(&KernelSpec::new(KernelKind::DrugFlux), &src, &obs)?;
    let v = ConcentrationProfile::from_fn(src, |x| 1.0 - x * x + 0.3 * (5.0 * x).sin())?;
    let series = flux(&v, &obs, &ctl)?;
    let gap = series
        .values()
        .iter()
        .zip(sys.apply(v.values()))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "series flux equals matrix flux",
        gap < 1e-9,
        format!("max gap {gap:.3e}"),
    ));

    let c = decay_constant(&fourier_coefficients(&v, ctl.terms_at(obs.lower())?)?);
    let worst = obs
        .nodes()
        .iter()
        .zip(series.values())
        .map(|(t, j)| j.abs() / (c * (-(PI / 2.0).powi(2) * t).exp()))
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "first-mode decay bound",
        worst <= 1.0 + 1e-12,
        format!("max |j|/bound {worst:.4}"),
    ));

    let edge = (0..5)
        .map(|i| concentration(&v, 0.01 + 0.2 * i as f64, 1.0, &ctl).map(f64::abs))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "sealed edge stays at zero",
        edge < 1e-10,
        format!("max |c(t,1)| {edge:.3e}"),
    ));

    let (m2, m3, load) = released_mass()?;
    let extrapolated = m3 + (m3 - m2) / 9.0;
    let rel = (extrapolated - load).abs() / load;
    checks.push(Check::new(
        "released mass approaches load",
        rel < 0.01,
        format!("extrapolated {extrapolated:.6}, load {load:.6}, relative gap {rel:.2e}"),
    ));
    Ok(checks)
}

/// Mass released after `t_min ∈ {1e-2, 1e-3}` for `v = 1 − x²`, and its load.
fn released_mass() -> Result<(f64, f64, f64)> {
    let v = ConcentrationProfile::from_fn(Grid1D::new(0.0, 1.0, 4001)?, |x| 1.0 - x * x)?;
    let ctl = SeriesControl::default();
    let released = |t_min: f64| -> Result<f64> {
        let mut total = 0.0;
        for (a, b) in [(t_min, 0.05), (0.05, 1.0), (1.0, 20.0)] {
            let g = Grid1D::new(a, b, 20_001)?;
            total += g.integrate(flux(&v, &g, &ctl)?.values());
        }
        Ok(total)
    };
    Ok((released(1e-2)?, released(1e-3)?, v.grid().integrate(v.values())))
}
