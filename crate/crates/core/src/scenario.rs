//! Benchmark problems and end-to-end inversion runs.
//!
//! `Ex41`/`Ex42` are smooth first-kind equations with known solutions.
//! `Case1`–`Case3` ask for the initial loading whose release flux over
//! `t ∈ (0, 0.5]` follows a desired profile; their inverted loading is pushed
//! back through the forward series to score the achieved release.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::forward;
use crate::kernel::{KernelKind, KernelSpec, SeriesControl};
use crate::lcurve::{self, LCurve};
use crate::model::{mean_square_deviation, ConcentrationProfile, Grid1D, ReleaseProfile};
use crate::regularization::{
    apriori_alpha, decompose, solve_filtered, AprioriRule, FilterFamily, FilterShape, FilterSpec, SvdSystem,
};
use crate::system::{assemble, contaminate, DiscreteSystem, FredholmExample, NoiseSpec};

/// Release horizon of the drug cases.
pub const RELEASE_HORIZON: f64 = 0.5;
pub const DEFAULT_NODES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    Ex41,
    Ex42,
    /// `j(t) = 1`
    Case1,
    /// `j(t) = 1.5 − 2t`
    Case2,
    /// `j(t) = 24t` up to `t = 0.05`, then `1.2`
    Case3,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::Ex41,
        ScenarioId::Ex42,
        ScenarioId::Case1,
        ScenarioId::Case2,
        ScenarioId::Case3,
    ];

    pub fn is_release_case(self) -> bool {
        matches!(self, ScenarioId::Case1 | ScenarioId::Case2 | ScenarioId::Case3)
    }

    pub fn example(self) -> Option<FredholmExample> {
        match self {
            ScenarioId::Ex41 => Some(FredholmExample::Ex41),
            ScenarioId::Ex42 => Some(FredholmExample::Ex42),
            _ => None,
        }
    }

    pub fn kernel(self, series: SeriesControl) -> KernelSpec {
        match self.example() {
            Some(ex) => ex.kernel(),
            None => KernelSpec::drug_flux(series),
        }
    }

    pub fn time_horizon(self) -> Option<f64> {
        self.is_release_case().then_some(RELEASE_HORIZON)
    }

    pub fn true_solution(self, s: f64) -> Option<f64> {
        self.example().map(|ex| ex.solution_value(s))
    }

    pub fn label(self) -> &'static str {
        match self {
            ScenarioId::Ex41 => "ex41",
            ScenarioId::Ex42 => "ex42",
            ScenarioId::Case1 => "case1",
            ScenarioId::Case2 => "case2",
            ScenarioId::Case3 => "case3",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain(format!("unknown scenario {s:?}")))
    }
}

/// Desired right-hand side: the release target for `Case*`, `y(t)` for the examples.
pub fn desired_flux(scenario: ScenarioId, t: f64) -> Result<f64> {
    let upper = scenario.time_horizon().unwrap_or(1.0);
    if !(0.0..=upper).contains(&t) {
        return Err(domain(format!("{scenario}: t = {t} outside [0, {upper}]")));
    }
    Ok(match scenario {
        ScenarioId::Ex41 => FredholmExample::Ex41.rhs_value(t),
        ScenarioId::Ex42 => FredholmExample::Ex42.rhs_value(t),
        ScenarioId::Case1 => 1.0,
        ScenarioId::Case2 => 1.5 - 2.0 * t,
        ScenarioId::Case3 => {
            if t <= 0.05 {
                24.0 * t
            } else {
                1.2
            }
        }
    })
}

/// Source (`s` or `x`) and observation (`t`) grids.
#[derive(Debug, Clone, PartialEq)]
pub struct Grids {
    pub source: Grid1D,
    pub obs: Grid1D,
}

impl Grids {
    /// `n` source nodes on `[0, 1]`, `m` observation nodes.
    ///
    /// Examples observe on `[0, 1]`. Release cases observe on `[t_min, 0.5]`,
    /// with `t_min` defaulting to `0.5 / m`.
    pub fn new(scenario: ScenarioId, n: usize, m: usize, t_min: Option<f64>) -> Result<Self> {
        let source = Grid1D::new(0.0, 1.0, n)?;
        let obs = match scenario.time_horizon() {
            Some(horizon) => {
                let t_min = t_min.unwrap_or(horizon / m.max(1) as f64);
                if t_min.is_nan() || t_min <= 0.0 {
                    return Err(domain(format!(
                        "release observations need t_min > 0 (flux kernel is singular at t = 0), got {t_min}"
                    )));
                }
                Grid1D::new(t_min, horizon, m)?
            }
            None => Grid1D::new(0.0, 1.0, m)?,
        };
        Ok(Self { source, obs })
    }

    pub fn default_for(scenario: ScenarioId) -> Self {
        Self::new(scenario, DEFAULT_NODES, DEFAULT_NODES, None).expect("default grids are valid")
    }

    pub fn t_min(&self) -> f64 {
        self.obs.lower()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Selection {
    /// Corner of an L-curve over the given (descending) `α` values.
    LCurve {
        alphas: Vec<f64>,
    },
    Apriori(AprioriRule),
    Fixed(f64),
}

impl Selection {
    pub fn lcurve() -> Self {
        Selection::LCurve {
            alphas: lcurve::default_alphas(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Selection::LCurve { .. } => "lcurve",
            Selection::Apriori(_) => "apriori",
            Selection::Fixed(_) => "fixed",
        }
    }
}

/// How `α` was actually obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum SelectionOutcome {
    Corner {
        index: usize,
    },
    Apriori {
        delta: f64,
    },
    Fixed,
    /// The L-curve was degenerate; the a-priori rule was used instead.
    Fallback {
        reason: String,
        delta: f64,
    },
}

impl fmt::Display for SelectionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionOutcome::Corner { index } => write!(f, "lcurve corner at sweep index {index}"),
            SelectionOutcome::Apriori { delta } => write!(f, "a-priori rule at delta {delta:e}"),
            SelectionOutcome::Fixed => f.write_str("fixed alpha"),
            SelectionOutcome::Fallback { reason, delta } => {
                write!(f, "a-priori fallback at delta {delta:e} ({reason})")
            }
        }
    }
}

/// Everything a run produced, with the inputs needed to reproduce it.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub scenario: ScenarioId,
    pub filter: FilterSpec,
    pub noise: NoiseSpec,
    pub grids: Grids,
    pub selection: SelectionOutcome,
    /// Inverted source samples (`v(x)` for release cases, `x(s)` for examples).
    pub profile: ConcentrationProfile,
    /// Observation-grid response of the inverted profile.
    pub achieved: Vec<f64>,
    /// Noise-free target on the observation grid.
    pub desired: Vec<f64>,
    pub msd: f64,
    /// `‖x̂ − x‖ / ‖x‖` when the true solution is known.
    pub solution_error: Option<f64>,
    /// `max |forward flux − A v̂|` for release cases.
    pub closed_loop_gap: Option<f64>,
    pub lcurve: Option<LCurve>,
}

impl RunReport {
    pub fn method(&self) -> FilterFamily {
        self.filter.family
    }

    pub fn negative_nodes(&self) -> usize {
        self.profile.negative_count()
    }

    pub fn achieved_flux(&self) -> Option<ReleaseProfile> {
        self.scenario
            .is_release_case()
            .then(|| ReleaseProfile::new(self.grids.obs.clone(), self.achieved.clone()).ok())
            .flatten()
    }
}

/// An assembled and decomposed scenario, reusable across methods and seeds.
#[derive(Debug, Clone)]
pub struct Problem {
    pub scenario: ScenarioId,
    pub grids: Grids,
    pub series: SeriesControl,
    pub system: DiscreteSystem,
    pub svd: SvdSystem,
    desired: Vec<f64>,
}

impl Problem {
    pub fn new(scenario: ScenarioId, grids: Grids, series: SeriesControl) -> Result<Self> {
        let kernel = scenario.kernel(series);
        if kernel.kind == KernelKind::DrugFlux && grids.t_min() <= 0.0 {
            return Err(domain("release cases need t_min > 0"));
        }
        let desired = grids
            .obs
            .nodes()
            .iter()
            .map(|&t| desired_flux(scenario, t))
            .collect::<Result<Vec<_>>>()?;
        let system = assemble(&kernel, &grids.source, &grids.obs)?.with_rhs(desired.clone())?;
        let svd = decompose(&system.matrix)?;
        Ok(Self {
            scenario,
            grids,
            series,
            system,
            svd,
            desired,
        })
    }

    pub fn with_defaults(scenario: ScenarioId) -> Result<Self> {
        Self::new(scenario, Grids::default_for(scenario), SeriesControl::default())
    }

    pub fn desired(&self) -> &[f64] {
        &self.desired
    }

    pub fn noisy_rhs(&self, noise: &NoiseSpec) -> Vec<f64> {
        contaminate(&self.desired, noise)
    }

    pub fn run(&self, shape: &FilterShape, noise: &NoiseSpec, selection: &Selection) -> Result<RunReport> {
        shape.validate()?;
        let rhs = self.noisy_rhs(noise);
        let (alpha, outcome, curve) = self.select_alpha(shape, &rhs, noise, selection)?;
        let filter = shape.with_alpha(alpha);
        let x = solve_filtered(&self.svd, &rhs, &filter)?;
        let profile = ConcentrationProfile::new(self.grids.source.clone(), x.clone())?;
        let discrete = self.system.apply(&x);

        let (achieved, closed_loop_gap) = if self.scenario.is_release_case() {
            let flux = forward::flux(&profile, &self.grids.obs, &self.series)?;
            let gap = flux
                .values()
                .iter()
                .zip(&discrete)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            (flux.values().to_vec(), Some(gap))
        } else {
            (discrete, None)
        };

        let msd = if self.scenario.is_release_case() {
            let achieved_p = ReleaseProfile::new(self.grids.obs.clone(), achieved.clone())?;
            let desired_p = ReleaseProfile::new(self.grids.obs.clone(), self.desired.clone())?;
            mean_square_deviation(&achieved_p, &desired_p)?
        } else {
            // example observation grids include t = 0, so compare samples directly
            achieved
                .iter()
                .zip(&self.desired)
                .map(|(a, d)| (a - d) * (a - d))
                .sum::<f64>()
                / achieved.len() as f64
        };

        let solution_error = self.scenario.example().map(|_| {
            let (mut num, mut den) = (0.0, 0.0);
            for (&s, xi) in self.grids.source.nodes().iter().zip(&x) {
                let truth = self.scenario.true_solution(s).unwrap_or(0.0);
                num += (xi - truth) * (xi - truth);
                den += truth * truth;
            }
            (num / den).sqrt()
        });

        Ok(RunReport {
            scenario: self.scenario,
            filter,
            noise: *noise,
            grids: self.grids.clone(),
            selection: outcome,
            profile,
            achieved,
            desired: self.desired.clone(),
            msd,
            solution_error,
            closed_loop_gap,
            lcurve: curve,
        })
    }

    fn select_alpha(
        &self,
        shape: &FilterShape,
        rhs: &[f64],
        noise: &NoiseSpec,
        selection: &Selection,
    ) -> Result<(f64, SelectionOutcome, Option<LCurve>)> {
        match selection {
            Selection::Fixed(alpha) => {
                shape.with_alpha(*alpha).validate()?;
                Ok((*alpha, SelectionOutcome::Fixed, None))
            }
            Selection::Apriori(rule) => {
                let delta = self.data_error_bound(noise, rhs);
                Ok((apriori_alpha(rule, delta)?, SelectionOutcome::Apriori { delta }, None))
            }
            Selection::LCurve { alphas } => {
                let mut curve = lcurve::sweep(&self.svd, rhs, shape, alphas)?;
                match lcurve::find_corner(&curve) {
                    Ok(index) => {
                        curve.corner_index = Some(index);
                        Ok((curve.alphas[index], SelectionOutcome::Corner { index }, Some(curve)))
                    }
                    Err(Error::Selection(reason)) => {
                        let delta = self.data_error_bound(noise, rhs);
                        let rule = fallback_rule(shape);
                        let alpha = apriori_alpha(&rule, delta)?;
                        Ok((alpha, SelectionOutcome::Fallback { reason, delta }, Some(curve)))
                    }
                    Err(e) => Err(e),
                }
            }
        }
    }

    /// Euclidean bound on the data perturbation, floored relative to `‖b‖`
    /// so that noise-free runs still get a positive level.
    fn data_error_bound(&self, noise: &NoiseSpec, rhs: &[f64]) -> f64 {
        let norm_b = rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
        (noise.delta * (rhs.len() as f64).sqrt()).max(1e-10 * norm_b.max(1.0))
    }
}

/// a-priori rule used when the L-curve has no corner: `v = 1`, `E = c = 1`.
pub fn fallback_rule(shape: &FilterShape) -> AprioriRule {
    let (sigma, r) = if shape.family.uses_exponents() {
        (shape.sigma, shape.r)
    } else {
        (2.0, 1.0)
    };
    AprioriRule {
        smoothness: 1.0,
        source_bound: 1.0,
        constant: 1.0,
        sigma,
        r,
    }
}

pub fn run_inversion(
    scenario: ScenarioId,
    shape: &FilterShape,
    grids: Grids,
    noise: &NoiseSpec,
    selection: &Selection,
) -> Result<RunReport> {
    Problem::new(scenario, grids, SeriesControl::default())?.run(shape, noise, selection)
}

/// Classical and modified Tikhonov on identical inputs.
#[derive(Debug, Clone)]
pub struct MethodComparison {
    pub trm: RunReport,
    pub mtrm: RunReport,
}

pub fn compare_methods(
    scenario: ScenarioId,
    grids: Grids,
    noise: &NoiseSpec,
    selection: &Selection,
    modified: &FilterShape,
) -> Result<MethodComparison> {
    let problem = Problem::new(scenario, grids, SeriesControl::default())?;
    compare_on(&problem, noise, selection, modified)
}

pub fn compare_on(
    problem: &Problem,
    noise: &NoiseSpec,
    selection: &Selection,
    modified: &FilterShape,
) -> Result<MethodComparison> {
    let trm = problem.run(&FilterShape::of(FilterFamily::ClassicalTikhonov), noise, selection)?;
    let mtrm = problem.run(modified, noise, selection)?;
    Ok(MethodComparison { trm, mtrm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_targets() {
        assert_eq!(desired_flux(ScenarioId::Case1, 0.3).unwrap(), 1.0);
        assert_eq!(desired_flux(ScenarioId::Case2, 0.0).unwrap(), 1.5);
        assert_eq!(desired_flux(ScenarioId::Case2, 0.5).unwrap(), 0.5);
        assert!((desired_flux(ScenarioId::Case3, 0.05).unwrap() - 1.2).abs() < 1e-15);
        assert_eq!(desired_flux(ScenarioId::Case3, 0.2).unwrap(), 1.2);
        assert!((desired_flux(ScenarioId::Case3, 0.025).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn case_targets_out_of_range() {
        assert!(desired_flux(ScenarioId::Case1, 0.6).is_err());
        assert!(desired_flux(ScenarioId::Case3, -0.01).is_err());
        assert!(desired_flux(ScenarioId::Ex41, 1.0).is_ok());
    }

    #[test]
    fn default_grids() {
        let g = Grids::default_for(ScenarioId::Case2);
        assert_eq!(g.source.len(), 100);
        assert_eq!(g.obs.len(), 100);
        assert!((g.t_min() - 0.005).abs() < 1e-15);
        assert_eq!(g.obs.upper(), 0.5);
        let g = Grids::default_for(ScenarioId::Ex41);
        assert_eq!(g.t_min(), 0.0);
        assert!(Grids::new(ScenarioId::Case1, 100, 100, Some(0.0)).is_err());
    }

    #[test]
    fn labels_parse() {
        for id in ScenarioId::ALL {
            assert_eq!(id.label().parse::<ScenarioId>().unwrap(), id);
        }
        assert!("case4".parse::<ScenarioId>().is_err());
    }

    #[test]
    fn fixed_alpha_run_is_populated() {
        let problem = Problem::new(
            ScenarioId::Case1,
            Grids::new(ScenarioId::Case1, 40, 40, None).unwrap(),
            SeriesControl::default(),
        )
        .unwrap();
        let report = problem
            .run(
                &FilterShape::of(FilterFamily::ModifiedTikhonov),
                &NoiseSpec::none(),
                &Selection::Fixed(1e-4),
            )
            .unwrap();
        assert_eq!(report.filter.alpha, 1e-4);
        assert!(report.msd.is_finite() && report.msd >= 0.0);
        assert!(report.closed_loop_gap.unwrap() < 1e-8);
        assert!(report.solution_error.is_none());
        assert!(report.achieved_flux().is_some());
    }
}
