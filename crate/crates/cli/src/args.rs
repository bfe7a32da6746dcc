//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use laminate::prelude::*;

pub const OUT_ENV: &str = "LAMINATE_OUT";

#[derive(Debug, Parser)]
#[command(
    name = "laminate",
    version,
    about = "Initial-concentration design for laminated release devices"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one of the two smooth benchmark equations.
    Fredholm(FredholmArgs),
    /// Invert a target release profile for the initial concentration.
    Release(ReleaseArgs),
    /// Run a property suite and report pass/fail per invariant.
    Verify(VerifyArgs),
    /// Export an L-curve sweep with its corner flagged.
    Lcurve(LcurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Trm,
    Mtrm,
    Tsvd,
    Li,
    Both,
}

impl MethodArg {
    /// Families to run, in output order.
    pub fn families(self) -> Vec<FilterFamily> {
        match self {
            MethodArg::Trm => vec![FilterFamily::ClassicalTikhonov],
            MethodArg::Mtrm => vec![FilterFamily::ModifiedTikhonov],
            MethodArg::Tsvd => vec![FilterFamily::Tsvd],
            MethodArg::Li => vec![FilterFamily::LiFilter],
            MethodArg::Both => vec![FilterFamily::ClassicalTikhonov, FilterFamily::ModifiedTikhonov],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseArg {
    /// One-sided draws from [0, 1].
    Unit,
    /// Symmetric draws from [-1, 1].
    Symmetric,
}

impl From<NoiseArg> for NoiseDistribution {
    fn from(n: NoiseArg) -> Self {
        match n {
            NoiseArg::Unit => NoiseDistribution::UniformUnit,
            NoiseArg::Symmetric => NoiseDistribution::UniformSymmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectionArg {
    Lcurve,
    /// `α = (δ/E)^{σr/(2v+1)}` with `v = E = 1`.
    Apriori,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Ex41,
    Ex42,
    Case1,
    Case2,
    Case3,
}

impl From<ScenarioArg> for ScenarioId {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::Ex41 => ScenarioId::Ex41,
            ScenarioArg::Ex42 => ScenarioId::Ex42,
            ScenarioArg::Case1 => ScenarioId::Case1,
            ScenarioArg::Case2 => ScenarioId::Case2,
            ScenarioArg::Case3 => ScenarioId::Case3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Filters,
    Rate,
    Quadrature,
    Forward,
    All,
}

/// Flags shared by every inversion command.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "mtrm")]
    pub method: MethodArg,
    /// Noise level; defaults to 0.001 for `fredholm`, 0 otherwise.
    #[arg(long, value_parser = non_negative)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 2.0, value_parser = positive)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub r: f64,
    /// Fixed α; skips parameter selection.
    #[arg(long, value_parser = positive)]
    pub alpha: Option<f64>,
    /// Observation nodes.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(3..))]
    pub m: u32,
    /// Source nodes.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(3..))]
    pub n: u32,
    #[arg(long, value_enum, default_value = "unit")]
    pub noise: NoiseArg,
    #[arg(long, value_enum, default_value = "lcurve")]
    pub selection: SelectionArg,
    #[arg(long, env = OUT_ENV, default_value = "laminate-out")]
    pub out: PathBuf,
    /// `key = value` defaults; explicit flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FredholmArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub example: u8,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReleaseArgs {
    #[arg(long = "case", value_parser = clap::value_parser!(u8).range(1..=3))]
    pub case: u8,
    /// First observation time; defaults to 0.5/m.
    #[arg(long, value_parser = positive)]
    pub tmin: Option<f64>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LcurveArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    #[arg(long, value_parser = positive)]
    pub tmin: Option<f64>,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(3..))]
    pub points: u32,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub alpha_min: f64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Samples for the filter suite.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u32).range(1..))]
    pub samples: u32,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = parse_finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be > 0, got {v}"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v = parse_finite(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("must be >= 0, got {v}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn later_flag_wins() {
        let cli = Cli::try_parse_from(["laminate", "release", "--case", "1", "--seed", "3", "--seed", "9"]).unwrap();
        let Command::Release(a) = cli.command else { panic!() };
        assert_eq!(a.run.seed, 9);
    }

    #[test]
    fn rejects_bad_values() {
        for argv in [
            vec!["laminate", "fredholm", "--example", "3"],
            vec!["laminate", "release", "--case", "1", "--tmin", "0"],
            vec!["laminate", "release", "--case", "4"],
            vec!["laminate", "release", "--case", "1", "--delta", "-1"],
            vec!["laminate", "release", "--case", "1", "--sigma", "nan"],
        ] {
            let err = Cli::try_parse_from(&argv).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{argv:?}");
        }
    }
}
