//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use laminate::prelude::*;
use laminate::scenario::compare_on;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Self {
            passed,
            detail,
            notes: Vec::new(),
        }
    }
}

type Criterion = (u8, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        (
            1,
            "modified filter properties",
            Duration::from_secs(1),
            filter_properties,
        ),
        (2, "optimal-order rate", Duration::from_secs(5), optimal_rate),
        (
            3,
            "forward operator on eigenmode",
            Duration::from_secs(1),
            forward_operator,
        ),
        (
            4,
            "benchmark method ordering",
            Duration::from_secs(10),
            benchmark_ordering,
        ),
        (
            5,
            "release case MSD ordering",
            Duration::from_secs(30),
            release_ordering,
        ),
        (6, "noise robustness", Duration::from_secs(30), noise_robustness),
        (7, "byte-identical reruns", Duration::from_secs(60), determinism),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let passed = outcome.passed && in_time;
        let tag = if passed { "PASS" } else { "FAIL" };
        let time = format!(
            "{:.2}s of {}s{}",
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { " exceeded" }
        );
        println!("criterion {n} {tag}: {name}: {} [{time}]", outcome.detail);
        for note in &outcome.notes {
            println!("    {note}");
        }
        if !passed {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 7 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}

fn filter_properties() -> Outcome {
    const SIGMAS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
    const RS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut violations = [0usize; 3];
    for _ in 0..10_000 {
        let alpha = 10f64.powf(rng.gen_range(-8.0..2.0));
        let mu = 10f64.powf(rng.gen_range(-6.0..1.0));
        let sigma = SIGMAS[rng.gen_range(0..4)];
        let r = RS[rng.gen_range(0..4)];
        let q = filter_value(&FilterSpec::modified(alpha, sigma, r), mu).unwrap();
        violations[0] += usize::from(!(0.0..=1.0).contains(&q));
        violations[1] += usize::from(q > mu * alpha.powf(-1.0 / (sigma * r)) * (1.0 + 1e-12));
        violations[2] += usize::from(mu.powf(sigma * r) >= alpha && q != 1.0);
    }
    Outcome::new(
        violations.iter().all(|&v| v == 0),
        format!(
            "10000 samples; violations: range {}, norm bound {}, identity branch {}",
            violations[0], violations[1], violations[2]
        ),
    )
}

/// `‖x_α^δ − x⁺‖` per δ on `μ_i = 10^{-i/20}` with `x⁺ = μ^{2v} z`.
fn diagonal_errors(v: f64, deltas: &[f64]) -> Vec<f64> {
    let mu: Vec<f64> = (0..=400).map(|i| 10f64.powf(-(i as f64) / 20.0)).collect();
    let z = 1.0 / (mu.len() as f64).sqrt();
    let exact: Vec<f64> = mu.iter().map(|m| m.powf(2.0 * v) * z).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e: Vec<f64> = (0..mu.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let e_norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
    let svd = SvdSystem::diagonal(mu.clone()).unwrap();
    deltas
        .iter()
        .map(|&delta| {
            let b: Vec<f64> = mu
                .iter()
                .zip(&exact)
                .zip(&e)
                .map(|((m, x), n)| m * x + delta * n / e_norm)
                .collect();
            // σ = 2, r = 1, c = 1, E = 1
            let alpha = delta.powf(2.0 / (2.0 * v + 1.0));
            let x = solve_filtered(&svd, &b, &FilterSpec::modified(alpha, 2.0, 1.0)).unwrap();
            x.iter().zip(&exact).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
        })
        .collect()
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = x.iter().zip(y).map(|(a, b)| (a.ln(), b.ln())).unzip();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    num / lx.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>()
}

fn optimal_rate() -> Outcome {
    let deltas = [1e-2, 1e-3, 1e-4, 1e-5];
    let mut passed = true;
    let mut parts = Vec::new();
    for v in [0.5, 1.0] {
        let s = slope(&deltas, &diagonal_errors(v, &deltas));
        let target = 2.0 * v / (2.0 * v + 1.0);
        passed &= (s - target).abs() <= 0.15;
        parts.push(format!("v={v}: slope {s:.4} vs {target:.4}"));
    }
    Outcome::new(passed, parts.join(", "))
}

fn eigenmode_error(n: usize) -> f64 {
    let src = Grid1D::new(0.0, 1.0, n).unwrap();
    let obs = Grid1D::new(0.005, 0.5, 100).unwrap();
    let sys = assemble(&KernelSpec::new(KernelKind::DrugFlux), &src, &obs).unwrap();
    let v: Vec<f64> = src.nodes().iter().map(|x| (PI * x / 2.0).cos()).collect();
    sys.apply(&v)
        .iter()
        .zip(obs.nodes())
        .map(|(a, t)| (a - PI / 2.0 * (-(PI / 2.0).powi(2) * t).exp()).abs())
        .fold(0.0, f64::max)
}

fn forward_operator() -> Outcome {
    let (e100, e200) = (eigenmode_error(100), eigenmode_error(200));
    let ratio = e100 / e200;
    let mut out = Outcome::new(
        e100 < 1e-3 && (3.5..=4.5).contains(&ratio),
        format!("max error {e100:.3e} at n=100, {e200:.3e} at n=200, ratio {ratio:.3} (needs < 1e-3 and ratio in [3.5, 4.5])"),
    );
    if !(3.5..=4.5).contains(&ratio) {
        out.notes
            .push("both errors sit at round-off: the trapezoid rule integrates the eigenmode products exactly".into());
    }
    out
}

fn benchmark_ordering() -> Outcome {
    let mtrm = FilterShape::of(FilterFamily::ModifiedTikhonov);
    let mut passed = true;
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for scenario in [ScenarioId::Ex41, ScenarioId::Ex42] {
        let problem = Problem::with_defaults(scenario).unwrap();
        let mut wins = 0;
        for seed in 1..=10 {
            let noise = NoiseSpec::new(0.001, seed).unwrap();
            let pair = compare_on(&problem, &noise, &Selection::lcurve(), &mtrm).unwrap();
            let (t, m) = (pair.trm.solution_error.unwrap(), pair.mtrm.solution_error.unwrap());
            wins += usize::from(m <= t);
            notes.push(format!("{scenario} seed {seed}: trm {t:.4e} mtrm {m:.4e}"));
        }
        passed &= wins >= 9;
        parts.push(format!("{scenario}: mtrm <= trm in {wins}/10 seeds"));
    }
    Outcome {
        passed,
        detail: format!("{} (needs >= 9/10 each)", parts.join(", ")),
        notes,
    }
}

const CASES: [ScenarioId; 3] = [ScenarioId::Case1, ScenarioId::Case2, ScenarioId::Case3];

fn release_ordering() -> Outcome {
    let mtrm = FilterShape::of(FilterFamily::ModifiedTikhonov);
    let mut passed = true;
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for scenario in CASES {
        let problem = Problem::with_defaults(scenario).unwrap();
        let pair = compare_on(&problem, &NoiseSpec::none(), &Selection::lcurve(), &mtrm).unwrap();
        passed &= pair.mtrm.msd < pair.trm.msd;
        if scenario == ScenarioId::Case2 {
            passed &= pair.mtrm.msd < 0.1;
        }
        parts.push(format!(
            "{scenario} trm {:.4e} mtrm {:.4e}",
            pair.trm.msd, pair.mtrm.msd
        ));
        for r in [&pair.trm, &pair.mtrm] {
            notes.push(format!(
                "{scenario} {}: alpha {:.4e}, sigma {}, r {}, t_min {}, grid {}x{}, {}",
                r.method(),
                r.filter.alpha,
                r.filter.sigma,
                r.filter.r,
                r.grids.t_min(),
                r.grids.obs.len(),
                r.grids.source.len(),
                r.selection
            ));
        }
    }
    Outcome {
        passed,
        detail: parts.join(", "),
        notes,
    }
}

fn noise_robustness() -> Outcome {
    let mtrm = FilterShape::of(FilterFamily::ModifiedTikhonov);
    let mut passed = true;
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for scenario in CASES {
        let problem = Problem::with_defaults(scenario).unwrap();
        let clean = problem
            .run(&mtrm, &NoiseSpec::none(), &Selection::lcurve())
            .unwrap()
            .msd;
        let noisy = problem
            .run(&mtrm, &NoiseSpec::new(0.1, 7).unwrap(), &Selection::lcurve())
            .unwrap()
            .msd;
        let ratio = noisy / clean;
        passed &= noisy.is_finite() && ratio <= 5.0;
        parts.push(format!("{scenario} ratio {ratio:.2}"));
        let symmetric = NoiseSpec::with_distribution(0.1, 7, NoiseDistribution::UniformSymmetric).unwrap();
        let sym = problem.run(&mtrm, &symmetric, &Selection::lcurve()).unwrap().msd;
        notes.push(format!(
            "{scenario}: noiseless {clean:.4e}, one-sided noise {noisy:.4e}; symmetric noise (not the criterion) {sym:.4e}, ratio {:.2}",
            sym / clean
        ));
    }
    Outcome {
        passed,
        detail: format!("delta 0.1 seed 7 one-sided noise: {} (needs <= 5)", parts.join(", ")),
        notes,
    }
}

fn snapshot(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let key = path.strip_prefix(root).unwrap().display().to_string();
                files.insert(key, fs::read(&path).unwrap());
            }
        }
    }
    files
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 5] = [
        &[
            "fredholm",
            "--example",
            "1",
            "--method",
            "both",
            "--delta",
            "0.001",
            "--seed",
            "1",
        ],
        &["fredholm", "--example", "2", "--method", "li", "--seed", "4"],
        &[
            "release", "--case", "1", "--method", "both", "--delta", "0.1", "--seed", "7",
        ],
        &[
            "release",
            "--case",
            "3",
            "--method",
            "tsvd",
            "--noise",
            "symmetric",
            "--delta",
            "0.05",
        ],
        &["lcurve", "--scenario", "case2", "--method", "both"],
    ];
    let dir = tempfile::tempdir().unwrap();
    let run_all = || {
        let out = dir.path().join("out");
        let _ = fs::remove_dir_all(&out);
        for args in commands {
            let status = Command::new(env!("CARGO_BIN_EXE_laminate"))
                .current_dir(dir.path())
                .env_remove("LAMINATE_OUT")
                .args(args)
                .args(["--out", "out"])
                .output()
                .unwrap()
                .status;
            assert!(status.success(), "{args:?} failed");
        }
        snapshot(&out)
    };
    let (first, second) = (run_all(), run_all());
    let differing: Vec<&String> = first.keys().filter(|k| first.get(*k) != second.get(*k)).collect();
    Outcome::new(
        !first.is_empty() && differing.is_empty() && first.len() == second.len(),
        format!(
            "{} CSV files from {} commands, {} differ",
            first.len(),
            commands.len(),
            differing.len()
        ),
    )
}
