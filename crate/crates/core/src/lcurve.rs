//! L-curve selection of the regularization parameter.
//!
//! The curve is `(log ρ(α), log η(α))` with `ρ = ‖A x_α − b‖` and
//! `η = ‖x_α‖`. The corner is the interior sample of maximal curvature,
//! where curvature at each sample is that of the circle through it and its
//! two neighbours, signed so the L's corner is positive.

use std::io::Write;

use crate::csvio::{self, Cell, Provenance};
use crate::error::{domain, Error, Result};
use crate::regularization::{solve_from_coefficients, FilterShape, SvdSystem};

pub const DEFAULT_SWEEP_LEN: usize = 200;
pub const DEFAULT_ALPHA_MAX: f64 = 1.0;
pub const DEFAULT_ALPHA_MIN: f64 = 1e-10;

/// Turning angles below this sine count as straight.
const COLLINEAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LCurve {
    pub alphas: Vec<f64>,
    pub residual_norms: Vec<f64>,
    pub solution_norms: Vec<f64>,
    pub corner_index: Option<usize>,
}

/// `count` logarithmically spaced values from `hi` down to `lo`.
pub fn log_alphas(hi: f64, lo: f64, count: usize) -> Result<Vec<f64>> {
    if !(hi > lo && lo > 0.0) || count < 2 {
        return Err(domain(format!("bad sweep range [{lo}, {hi}] x {count}")));
    }
    let (lhi, llo) = (hi.log10(), lo.log10());
    Ok((0..count)
        .map(|i| {
            let f = i as f64 / (count - 1) as f64;
            10f64.powf(lhi + f * (llo - lhi))
        })
        .collect())
}

/// 200 values from `1` down to `1e-10`.
pub fn default_alphas() -> Vec<f64> {
    log_alphas(DEFAULT_ALPHA_MAX, DEFAULT_ALPHA_MIN, DEFAULT_SWEEP_LEN).expect("static range")
}

pub fn sweep(svd: &SvdSystem, b: &[f64], shape: &FilterShape, alphas: &[f64]) -> Result<LCurve> {
    if alphas.len() < 3 {
        return Err(domain(format!("L-curve needs at least 3 alphas, got {}", alphas.len())));
    }
    if alphas.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
        return Err(domain("alphas must be positive and finite"));
    }
    if alphas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(domain("alphas must be strictly descending"));
    }
    shape.validate()?;
    let beta = svd.coefficients(b)?;
    let mut residual_norms = Vec::with_capacity(alphas.len());
    let mut solution_norms = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let x = solve_from_coefficients(svd, &beta, &shape.with_alpha(alpha));
        let ax = svd.apply(&x)?;
        residual_norms.push(norm_diff(&ax, b));
        solution_norms.push(norm(&x));
    }
    Ok(LCurve {
        alphas: alphas.to_vec(),
        residual_norms,
        solution_norms,
        corner_index: None,
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl LCurve {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Log-log points `(log ρ, log η)`; zero norms are clamped to the smallest positive double.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.residual_norms
            .iter()
            .zip(&self.solution_norms)
            .map(|(&r, &s)| (r.max(f64::MIN_POSITIVE).ln(), s.max(f64::MIN_POSITIVE).ln()))
            .collect()
    }

    /// Signed circumscribed-circle curvature per sample; endpoints get 0.
    pub fn curvatures(&self) -> Vec<f64> {
        let pts = self.points();
        let mut kappa = vec![0.0; pts.len()];
        for i in 1..pts.len().saturating_sub(1) {
            kappa[i] = menger(pts[i - 1], pts[i], pts[i + 1]).0;
        }
        kappa
    }

    pub fn selected_alpha(&self) -> Option<f64> {
        self.corner_index.map(|i| self.alphas[i])
    }

    pub fn write_csv<W: Write>(&self, out: W, provenance: &Provenance) -> Result<()> {
        let rows: Vec<Vec<Cell>> = (0..self.len())
            .map(|i| {
                vec![
                    self.alphas[i].into(),
                    self.residual_norms[i].into(),
                    self.solution_norms[i].into(),
                    (self.corner_index == Some(i)).into(),
                ]
            })
            .collect();
        csvio::write_rows(
            out,
            provenance,
            &["alpha", "residual_norm", "solution_norm", "is_corner"],
            &rows,
        )
    }
}

/// Returns `(signed curvature, |sin turning angle|)`.
fn menger(p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> (f64, f64) {
    let a = (p1.0 - p0.0, p1.1 - p0.1);
    let b = (p2.0 - p1.0, p2.1 - p1.1);
    let c = (p2.0 - p0.0, p2.1 - p0.1);
    let (la, lb, lc) = (a.0.hypot(a.1), b.0.hypot(b.1), c.0.hypot(c.1));
    if la == 0.0 || lb == 0.0 || lc == 0.0 {
        return (0.0, 0.0);
    }
    let cross = a.0 * b.1 - a.1 * b.0;
    (-2.0 * cross / (la * lb * lc), (cross / (la * lb)).abs())
}

/// Index of maximal curvature; ties resolve toward larger `α` (smaller index).
pub fn find_corner(curve: &LCurve) -> Result<usize> {
    let n = curve.len();
    if n < 3 || curve.residual_norms.len() != n || curve.solution_norms.len() != n {
        return Err(domain("L-curve needs at least 3 consistent samples"));
    }
    let pts = curve.points();
    let mut best: Option<(usize, f64)> = None;
    let mut bent = false;
    for i in 1..n - 1 {
        let (kappa, turn) = menger(pts[i - 1], pts[i], pts[i + 1]);
        if turn > COLLINEAR_TOLERANCE {
            bent = true;
        }
        if !kappa.is_finite() {
            continue;
        }
        if best.is_none_or(|(_, k)| kappa > k) {
            best = Some((i, kappa));
        }
    }
    match best {
        Some((i, _)) if bent => Ok(i),
        _ => Err(Error::Selection("L-curve is degenerate (collinear in log-log)".into())),
    }
}
