//! Trapezoid discretization of first-kind integral operators and data noise.

use std::io::Write;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csvio::{self, Provenance};
use crate::error::{domain, Result};
use crate::kernel::{drug_flux_partial_sum, kernel_value, KernelKind, KernelSpec};
use crate::model::Grid1D;

/// `A X ≈ b` with quadrature weights folded into the columns of `A`.
#[derive(Debug, Clone)]
pub struct DiscreteSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: Option<Vec<f64>>,
    pub source_grid: Grid1D,
    pub obs_grid: Grid1D,
    pub kernel: KernelSpec,
}

impl DiscreteSystem {
    pub fn with_rhs(mut self, rhs: Vec<f64>) -> Result<Self> {
        if rhs.len() != self.matrix.nrows() {
            return Err(domain(format!(
                "rhs has {} entries, system has {} rows",
                rhs.len(),
                self.matrix.nrows()
            )));
        }
        self.rhs = Some(rhs);
        Ok(self)
    }

    /// `A x` for samples `x` on the source grid.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.matrix.ncols(), "sample count must match source grid");
        (0..self.matrix.nrows())
            .map(|i| self.matrix.row(i).iter().zip(x).map(|(a, v)| a * v).sum())
            .collect()
    }

    /// One matrix row per line, no header.
    pub fn write_matrix_csv<W: Write>(&self, mut out: W, provenance: &Provenance) -> Result<()> {
        provenance.write_to(&mut out)?;
        let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        for row in self.matrix.row_iter() {
            wtr.write_record(row.iter().map(|&v| csvio::format_float(v)))?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn write_rhs_csv<W: Write>(&self, out: W, provenance: &Provenance) -> Result<()> {
        let rhs = self.rhs.as_deref().ok_or_else(|| domain("system has no rhs"))?;
        csvio::write_columns(out, provenance, &["t", "b"], &[self.obs_grid.nodes(), rhs])
    }
}

/// `A[i][j] = prefactor · k(s_j, t_i) · w_j`.
pub fn assemble(kernel: &KernelSpec, source_grid: &Grid1D, obs_grid: &Grid1D) -> Result<DiscreteSystem> {
    if kernel.kind == KernelKind::DrugFlux && obs_grid.lower() <= 0.0 {
        return Err(domain(format!(
            "flux kernel is singular at t = 0; observation grid starts at {}",
            obs_grid.lower()
        )));
    }
    let (m, n) = (obs_grid.len(), source_grid.len());
    let pre = kernel.prefactor();
    let mut matrix = DMatrix::zeros(m, n);
    for (i, &t) in obs_grid.nodes().iter().enumerate() {
        match kernel.kind {
            KernelKind::DrugFlux => {
                kernel.series.validate()?;
                let terms = kernel.series.terms_at(t)?;
                for (j, (&s, &w)) in source_grid.nodes().iter().zip(source_grid.weights()).enumerate() {
                    matrix[(i, j)] = pre * drug_flux_partial_sum(s, t, terms) * w;
                }
            }
            _ => {
                for (j, (&s, &w)) in source_grid.nodes().iter().zip(source_grid.weights()).enumerate() {
                    matrix[(i, j)] = pre * kernel_value(kernel, s, t)? * w;
                }
            }
        }
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(domain("assembled matrix has non-finite entries"));
    }
    Ok(DiscreteSystem {
        matrix,
        rhs: None,
        source_grid: source_grid.clone(),
        obs_grid: obs_grid.clone(),
        kernel: *kernel,
    })
}

/// The two smooth benchmark equations on the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FredholmExample {
    /// `∫ (1 + ts) e^{ts} x(s) ds = e^t`, solution `x ≡ 1`.
    Ex41,
    /// `∫ e^{ts} x(s) ds = (e^{t+2} − 1)/(t + 2)`, solution `x = e^{2s}`.
    Ex42,
}

impl FredholmExample {
    pub fn kernel(self) -> KernelSpec {
        match self {
            FredholmExample::Ex41 => KernelSpec::new(KernelKind::GradientExp),
            FredholmExample::Ex42 => KernelSpec::new(KernelKind::PlainExp),
        }
    }

    pub fn rhs_value(self, t: f64) -> f64 {
        match self {
            FredholmExample::Ex41 => t.exp(),
            FredholmExample::Ex42 => ((t + 2.0).exp() - 1.0) / (t + 2.0),
        }
    }

    pub fn solution_value(self, s: f64) -> f64 {
        match self {
            FredholmExample::Ex41 => 1.0,
            FredholmExample::Ex42 => (2.0 * s).exp(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FredholmExample::Ex41 => "ex41",
            FredholmExample::Ex42 => "ex42",
        }
    }
}

pub fn exact_rhs(example: FredholmExample, obs_grid: &Grid1D) -> Vec<f64> {
    obs_grid.nodes().iter().map(|&t| example.rhs_value(t)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NoiseDistribution {
    /// One-sided draws from `[0, 1)`.
    #[default]
    UniformUnit,
    /// Draws from `[-1, 1]`.
    UniformSymmetric,
}

impl NoiseDistribution {
    pub fn label(self) -> &'static str {
        match self {
            NoiseDistribution::UniformUnit => "uniform-unit",
            NoiseDistribution::UniformSymmetric => "uniform-symmetric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub delta: f64,
    pub seed: u64,
    pub distribution: NoiseDistribution,
}

impl NoiseSpec {
    pub fn new(delta: f64, seed: u64) -> Result<Self> {
        Self::with_distribution(delta, seed, NoiseDistribution::default())
    }

    pub fn with_distribution(delta: f64, seed: u64, distribution: NoiseDistribution) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(domain(format!("noise level must be nonnegative, got {delta}")));
        }
        Ok(Self {
            delta,
            seed,
            distribution,
        })
    }

    pub fn none() -> Self {
        Self {
            delta: 0.0,
            seed: 0,
            distribution: NoiseDistribution::default(),
        }
    }
}

/// `b̃_i = b_i + δ u_i` with `u_i` drawn from a ChaCha8 stream seeded by `noise.seed`.
pub fn contaminate(b: &[f64], noise: &NoiseSpec) -> Vec<f64> {
    if noise.delta == 0.0 {
        return b.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    b.iter()
        .map(|&bi| {
            let u: f64 = match noise.distribution {
                NoiseDistribution::UniformUnit => rng.gen(),
                NoiseDistribution::UniformSymmetric => rng.gen_range(-1.0..=1.0),
            };
            bi + noise.delta * u
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::SeriesControl;
    use std::f64::consts::{E, PI};

    fn unit(n: usize) -> Grid1D {
        Grid1D::new(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn plain_exp_two_by_two() {
        let sys = assemble(&KernelSpec::new(KernelKind::PlainExp), &unit(2), &unit(2)).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5 * E]);
        assert!((sys.matrix - expected).amax() < 1e-15);
    }

    #[test]
    fn example_systems_are_square_hundred() {
        let g = unit(100);
        let sys = assemble(&FredholmExample::Ex41.kernel(), &g, &g).unwrap();
        assert_eq!(sys.matrix.shape(), (100, 100));
    }

    #[test]
    fn drug_flux_needs_positive_times() {
        let k = KernelSpec::new(KernelKind::DrugFlux);
        let err = assemble(&k, &unit(10), &Grid1D::new(0.0, 0.5, 10).unwrap());
        assert!(matches!(err, Err(crate::Error::Domain(_))));
    }

    #[test]
    fn example_rhs_values() {
        let g = unit(2);
        assert_eq!(exact_rhs(FredholmExample::Ex41, &g)[0], 1.0);
        let r = exact_rhs(FredholmExample::Ex42, &g);
        assert!((r[0] - (E * E - 1.0) / 2.0).abs() < 1e-14);
        assert!((r[0] - 3.194528).abs() < 1e-6);
        assert!((r[1] - 6.361845).abs() < 1e-6);
    }

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn ex41_forward_consistency_is_second_order() {
        let err = |n: usize| {
            let g = unit(n);
            let sys = assemble(&FredholmExample::Ex41.kernel(), &g, &g).unwrap();
            max_err(&sys.apply(&vec![1.0; n]), &exact_rhs(FredholmExample::Ex41, &g))
        };
        let (e1, e2) = (err(51), err(101));
        let ratio = e1 / e2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        assert!(e2 < 1e-3);
    }

    #[test]
    fn ex42_forward_consistency_is_second_order() {
        let err = |n: usize| {
            let g = unit(n);
            let sys = assemble(&FredholmExample::Ex42.kernel(), &g, &g).unwrap();
            let x: Vec<f64> = g
                .nodes()
                .iter()
                .map(|&s| FredholmExample::Ex42.solution_value(s))
                .collect();
            max_err(&sys.apply(&x), &exact_rhs(FredholmExample::Ex42, &g))
        };
        let ratio = err(51) / err(101);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn drug_flux_eigenmode() {
        let xs = unit(100);
        let ts = Grid1D::new(0.005, 0.5, 100).unwrap();
        let sys = assemble(&KernelSpec::drug_flux(SeriesControl::default()), &xs, &ts).unwrap();
        let mode: Vec<f64> = xs.nodes().iter().map(|&x| (PI * x / 2.0).cos()).collect();
        let expected: Vec<f64> = ts
            .nodes()
            .iter()
            .map(|&t| PI / 2.0 * (-(PI / 2.0).powi(2) * t).exp())
            .collect();
        assert!(max_err(&sys.apply(&mode), &expected) < 1e-3);
    }

    #[test]
    fn zero_noise_is_identity() {
        let b = vec![1.0, 2.0, 3.0];
        assert_eq!(contaminate(&b, &NoiseSpec::new(0.0, 9).unwrap()), b);
    }

    #[test]
    fn unit_noise_is_one_sided() {
        let b: Vec<f64> = (0..500).map(|i| i as f64 * 0.01).collect();
        let noisy = contaminate(&b, &NoiseSpec::new(0.001, 3).unwrap());
        for (x, y) in b.iter().zip(&noisy) {
            assert!(*x <= *y && *y <= x + 0.001);
        }
        assert_ne!(b, noisy);
    }

    #[test]
    fn symmetric_noise_has_both_signs() {
        let b = vec![0.0; 200];
        let spec = NoiseSpec::with_distribution(1.0, 3, NoiseDistribution::UniformSymmetric).unwrap();
        let noisy = contaminate(&b, &spec);
        assert!(noisy.iter().all(|v| (-1.0..=1.0).contains(v)));
        assert!(noisy.iter().any(|&v| v < 0.0) && noisy.iter().any(|&v| v > 0.0));
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        let b = vec![1.0; 50];
        let spec = NoiseSpec::new(0.1, 42).unwrap();
        assert_eq!(contaminate(&b, &spec), contaminate(&b, &spec));
        assert_ne!(
            contaminate(&b, &spec),
            contaminate(&b, &NoiseSpec::new(0.1, 43).unwrap())
        );
    }

    #[test]
    fn negative_delta_rejected() {
        assert!(NoiseSpec::new(-0.1, 1).is_err());
    }

    #[test]
    fn rhs_length_checked() {
        let sys = assemble(&FredholmExample::Ex41.kernel(), &unit(4), &unit(3)).unwrap();
        assert!(sys.clone().with_rhs(vec![1.0; 4]).is_err());
        assert!(sys.with_rhs(vec![1.0; 3]).is_ok());
    }
}
