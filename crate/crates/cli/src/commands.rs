//! Subcommand implementations. All text output goes through `out`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use laminate::csvio::{self, Provenance};
use laminate::lcurve::log_alphas;
use laminate::prelude::*;
use laminate::report::write_summary;
use laminate::scenario::fallback_rule;

use crate::args::{Cli, Command, FredholmArgs, LcurveArgs, ReleaseArgs, RunArgs, SelectionArg, VerifyArgs};
use crate::{verify, CliError};

pub fn execute(cli: &Cli, command_line: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let base = Provenance::new()
        .with("tool", format!("laminate {}", env!("CARGO_PKG_VERSION")))
        .with("command", command_line);
    match &cli.command {
        Command::Fredholm(a) => fredholm(a, &base, out),
        Command::Release(a) => release(a, &base, out),
        Command::Lcurve(a) => lcurve(a, &base, out),
        Command::Verify(a) => run_verify(a, out),
    }
}

fn noise_of(run: &RunArgs, default_delta: f64) -> Result<NoiseSpec, CliError> {
    Ok(NoiseSpec::with_distribution(
        run.delta.unwrap_or(default_delta),
        run.seed,
        run.noise.into(),
    )?)
}

fn selection_of(run: &RunArgs, shape: &FilterShape) -> Selection {
    match (run.alpha, run.selection) {
        (Some(alpha), _) => Selection::Fixed(alpha),
        (None, SelectionArg::Lcurve) => Selection::lcurve(),
        (None, SelectionArg::Apriori) => Selection::Apriori(fallback_rule(shape)),
    }
}

fn selection_label(run: &RunArgs) -> &'static str {
    match (run.alpha, run.selection) {
        (Some(_), _) => "fixed",
        (None, SelectionArg::Lcurve) => "lcurve",
        (None, SelectionArg::Apriori) => "apriori",
    }
}

fn shapes(run: &RunArgs, families: Vec<FilterFamily>) -> Result<Vec<FilterShape>, CliError> {
    families
        .into_iter()
        .map(|f| Ok(FilterShape::new(f, run.sigma, run.r)?))
        .collect()
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn finish(mut w: BufWriter<File>) -> Result<(), CliError> {
    w.flush()?;
    Ok(())
}

fn run_all(
    problem: &Problem,
    run: &RunArgs,
    shapes: &[FilterShape],
    noise: &NoiseSpec,
) -> Result<Vec<RunReport>, CliError> {
    shapes
        .iter()
        .map(|shape| Ok(problem.run(shape, noise, &selection_of(run, shape))?))
        .collect()
}

fn fredholm(args: &FredholmArgs, base: &Provenance, out: &mut dyn Write) -> Result<(), CliError> {
    let run = &args.run;
    let example = if args.example == 1 {
        FredholmExample::Ex41
    } else {
        FredholmExample::Ex42
    };
    let scenario = if args.example == 1 {
        ScenarioId::Ex41
    } else {
        ScenarioId::Ex42
    };
    let grids = Grids::new(scenario, run.n as usize, run.m as usize, None)?;
    let problem = Problem::new(scenario, grids, SeriesControl::default())?;
    let noise = noise_of(run, 0.001)?;

    // classical Tikhonov always runs as the baseline
    let mut families = run.method.families();
    if !families.contains(&FilterFamily::ClassicalTikhonov) {
        families.push(FilterFamily::ClassicalTikhonov);
    }
    let reports = run_all(&problem, run, &shapes(run, families)?, &noise)?;

    let dir = run.out.join(scenario.label());
    for report in &reports {
        let sub = dir.join(report.method().label());
        let prov = report.provenance(base);
        let s = report.grids.source.nodes();
        let exact: Vec<f64> = s.iter().map(|&x| example.solution_value(x)).collect();
        let mut w = create(&sub.join("solution.csv"))?;
        csvio::write_columns(
            &mut w,
            &prov,
            &["s", "x", "exact"],
            &[s, report.profile.values(), &exact],
        )?;
        finish(w)?;
        if let Some(curve) = &report.lcurve {
            let mut w = create(&sub.join("lcurve.csv"))?;
            curve.write_csv(&mut w, &prov)?;
            finish(w)?;
        }
    }
    summarize(&dir, base, selection_label(run), &reports, out)
}

fn summarize(
    dir: &Path,
    base: &Provenance,
    mode: &str,
    reports: &[RunReport],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let first = &reports[0];
    let prov = base
        .clone()
        .with("scenario", first.scenario)
        .with("selection", mode)
        .with("noise", first.noise.distribution.label())
        .with("t_min", first.grids.t_min())
        .with("n_source", first.grids.source.len())
        .with("m_obs", first.grids.obs.len());
    let refs: Vec<&RunReport> = reports.iter().collect();
    let mut w = create(&dir.join("summary.csv"))?;
    write_summary(&mut w, &refs, &prov)?;
    finish(w)?;

    for r in reports {
        write!(
            out,
            "{} {:<4} alpha={} msd={}",
            r.scenario,
            r.method().label(),
            csvio::format_float(r.filter.alpha),
            csvio::format_float(r.msd)
        )?;
        if let Some(e) = r.solution_error {
            write!(out, " error={}", csvio::format_float(e))?;
        }
        if r.negative_nodes() > 0 {
            write!(out, " negative_nodes={}", r.negative_nodes())?;
        }
        writeln!(out)?;
    }
    writeln!(out, "wrote {}", dir.display())?;
    Ok(())
}

fn release(args: &ReleaseArgs, base: &Provenance, out: &mut dyn Write) -> Result<(), CliError> {
    let run = &args.run;
    let scenario = [ScenarioId::Case1, ScenarioId::Case2, ScenarioId::Case3][args.case as usize - 1];
    let grids = Grids::new(scenario, run.n as usize, run.m as usize, args.tmin)?;
    let problem = Problem::new(scenario, grids, SeriesControl::default())?;
    let noise = noise_of(run, 0.0)?;
    let reports = run_all(&problem, run, &shapes(run, run.method.families())?, &noise)?;

    let dir = run.out.join(scenario.label());
    for report in &reports {
        report.write_bundle(&dir.join(report.method().label()), base)?;
    }
    summarize(&dir, base, selection_label(run), &reports, out)
}

fn lcurve(args: &LcurveArgs, base: &Provenance, out: &mut dyn Write) -> Result<(), CliError> {
    let run = &args.run;
    if args.alpha_min >= args.alpha_max {
        return Err(CliError::Usage("--alpha-min must be below --alpha-max".into()));
    }
    let scenario = ScenarioId::from(args.scenario);
    let grids = Grids::new(scenario, run.n as usize, run.m as usize, args.tmin)?;
    let problem = Problem::new(scenario, grids, SeriesControl::default())?;
    let noise = noise_of(run, if scenario.is_release_case() { 0.0 } else { 0.001 })?;
    let rhs = problem.noisy_rhs(&noise);
    let alphas = log_alphas(args.alpha_max, args.alpha_min, args.points as usize)?;

    let dir = run.out.join(scenario.label());
    for shape in shapes(run, run.method.families())? {
        let mut curve = sweep(&problem.svd, &rhs, &shape, &alphas)?;
        let label = shape.family.label();
        match find_corner(&curve) {
            Ok(i) => {
                curve.corner_index = Some(i);
                writeln!(
                    out,
                    "{scenario} {label:<4} corner={i} alpha={}",
                    csvio::format_float(alphas[i])
                )?;
            }
            Err(Error::Selection(reason)) => writeln!(out, "{scenario} {label:<4} no corner: {reason}")?,
            Err(e) => return Err(e.into()),
        }
        let prov = base
            .clone()
            .with("scenario", scenario)
            .with("method", label)
            .with("sigma", shape.sigma)
            .with("r", shape.r)
            .with(
                "alpha",
                curve.selected_alpha().map_or("none".into(), csvio::format_float),
            )
            .with("delta", noise.delta)
            .with("seed", noise.seed)
            .with("noise", noise.distribution.label())
            .with("t_min", problem.grids.t_min())
            .with("n_source", problem.grids.source.len())
            .with("m_obs", problem.grids.obs.len());
        let mut w = create(&dir.join(format!("lcurve_{label}.csv")))?;
        curve.write_csv(&mut w, &prov)?;
        finish(w)?;
    }
    writeln!(out, "wrote {}", dir.display())?;
    Ok(())
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let checks = verify::run_suite(args.suite, args.seed, args.samples as usize)?;
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.to_string())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(failed))
    }
}
