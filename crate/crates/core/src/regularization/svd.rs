use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Error, Result};

/// Singular values below this fraction of the largest are discarded.
pub const DEFAULT_DROP_TOLERANCE: f64 = 1e-14;

/// Singular system `(μ_i, x_i, y_i)` of a discrete operator.
///
/// Columns of `left` are the `y_i`, columns of `right` the `x_i`; `values` is
/// strictly positive and descending. The first clearly nonzero component of
/// every right vector is nonnegative.
#[derive(Debug, Clone)]
pub struct SvdSystem {
    left: DMatrix<f64>,
    values: Vec<f64>,
    right: DMatrix<f64>,
}

impl SvdSystem {
    pub fn from_parts(left: DMatrix<f64>, values: Vec<f64>, right: DMatrix<f64>) -> Result<Self> {
        let p = values.len();
        if left.ncols() != p || right.ncols() != p {
            return Err(domain(format!(
                "singular system shapes disagree: {} values, {} left and {} right vectors",
                p,
                left.ncols(),
                right.ncols()
            )));
        }
        if values.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(domain("singular values must be positive and finite"));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(domain("singular values must be in descending order"));
        }
        Ok(Self { left, values, right })
    }

    /// Square diagonal operator `diag(values)` with canonical basis vectors.
    pub fn diagonal(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::from_parts(DMatrix::identity(n, n), values, DMatrix::identity(n, n))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left(&self) -> &DMatrix<f64> {
        &self.left
    }

    pub fn right(&self) -> &DMatrix<f64> {
        &self.right
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Operator shape `(m, n)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.left.nrows(), self.right.nrows())
    }

    /// `⟨b, y_i⟩` for every retained singular triple.
    pub fn coefficients(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.left.nrows() {
            return Err(domain(format!(
                "rhs has {} entries, operator has {} rows",
                b.len(),
                self.left.nrows()
            )));
        }
        let b = DVector::from_column_slice(b);
        Ok(self.left.tr_mul(&b).as_slice().to_vec())
    }

    /// `Σ c_i x_i`.
    pub fn combine_right(&self, coeffs: &[f64]) -> Vec<f64> {
        debug_assert_eq!(coeffs.len(), self.rank());
        let c = DVector::from_column_slice(coeffs);
        (&self.right * c).as_slice().to_vec()
    }

    /// `Σ μ_i y_i x_iᵀ x`, i.e. the rank-truncated operator applied to `x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.right.nrows() {
            return Err(domain("vector length does not match operator columns"));
        }
        let x = DVector::from_column_slice(x);
        let mut c = self.right.tr_mul(&x);
        for (ci, mu) in c.iter_mut().zip(&self.values) {
            *ci *= mu;
        }
        Ok((&self.left * c).as_slice().to_vec())
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut scaled = self.left.clone();
        for (mut col, mu) in scaled.column_iter_mut().zip(&self.values) {
            col *= *mu;
        }
        scaled * self.right.transpose()
    }
}

pub fn decompose(a: &DMatrix<f64>) -> Result<SvdSystem> {
    decompose_with(a, DEFAULT_DROP_TOLERANCE)
}

/// Full SVD, retaining `μ_i > drop_tolerance · μ_1`.
pub fn decompose_with(a: &DMatrix<f64>, drop_tolerance: f64) -> Result<SvdSystem> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(domain("cannot decompose an empty matrix"));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(domain("matrix has non-finite entries"));
    }
    let svd = a
        .clone()
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numerical("SVD iteration did not converge".into()))?;
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(Error::Numerical("SVD returned no singular vectors".into())),
    };
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));

    let top = order.first().map_or(0.0, |&i| svd.singular_values[i]);
    let keep: Vec<usize> = order
        .into_iter()
        .filter(|&i| {
            let s = svd.singular_values[i];
            s > 0.0 && s > drop_tolerance * top
        })
        .collect();

    let (m, n) = (a.nrows(), a.ncols());
    let mut left = DMatrix::zeros(m, keep.len());
    let mut right = DMatrix::zeros(n, keep.len());
    let mut values = Vec::with_capacity(keep.len());
    for (c, &i) in keep.iter().enumerate() {
        let mut y = u.column(i).into_owned();
        let mut x = vt.row(i).transpose();
        let scale = x.amax();
        if let Some(first) = x.iter().find(|v| v.abs() > 1e-10 * scale) {
            if *first < 0.0 {
                x.neg_mut();
                y.neg_mut();
            }
        }
        left.set_column(c, &y);
        right.set_column(c, &x);
        values.push(svd.singular_values[i]);
    }
    SvdSystem::from_parts(left, values, right)
}
