use std::io::{Read, Write};

use super::grid::Grid1D;
use crate::csvio::{self, Provenance};
use crate::error::{domain, Result};

fn check_samples(grid: &Grid1D, values: &[f64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(domain(format!(
            "profile has {} values for a {}-node grid",
            values.len(),
            grid.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(domain(format!("non-finite profile value at node {i}")));
    }
    Ok(())
}

fn grid_from_nodes(nodes: &[f64]) -> Result<Grid1D> {
    let (first, last) = match nodes {
        [first, .., last] => (*first, *last),
        _ => return Err(domain("profile CSV needs at least two rows")),
    };
    let grid = Grid1D::new(first, last, nodes.len())?;
    let tol = 1e-9 * grid.step();
    if grid.nodes().iter().zip(nodes).any(|(a, b)| (a - b).abs() > tol) {
        return Err(domain("profile CSV nodes are not uniformly spaced"));
    }
    Ok(grid)
}

/// Initial concentration `v(x)` sampled on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationProfile {
    grid: Grid1D,
    values: Vec<f64>,
}

impl ConcentrationProfile {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if grid.lower() != 0.0 || grid.upper() != 1.0 {
            return Err(domain(format!(
                "concentration grid must span [0, 1], got [{}, {}]",
                grid.lower(),
                grid.upper()
            )));
        }
        check_samples(&grid, &values)?;
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of nodes carrying a negative concentration.
    pub fn negative_count(&self) -> usize {
        self.values.iter().filter(|&&v| v < 0.0).count()
    }

    pub fn write_csv<W: Write>(&self, out: W, provenance: &Provenance) -> Result<()> {
        csvio::write_columns(out, provenance, &["x", "v"], &[self.grid.nodes(), &self.values])
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let table = csvio::read_columns(input)?;
        let (x, v) = match (table.column("x"), table.column("v")) {
            (Some(x), Some(v)) => (x, v),
            _ => return Err(domain("concentration CSV needs columns x,v")),
        };
        Self::new(grid_from_nodes(x)?, v.to_vec())
    }
}

/// Release flux `j(t)` sampled on `[t_min, T]` with `t_min > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReleaseProfile {
    grid: Grid1D,
    values: Vec<f64>,
}

impl ReleaseProfile {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if grid.lower() <= 0.0 {
            return Err(domain(format!(
                "release grid must start after t = 0, got t_min = {}",
                grid.lower()
            )));
        }
        check_samples(&grid, &values)?;
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn write_csv<W: Write>(&self, out: W, provenance: &Provenance) -> Result<()> {
        csvio::write_columns(out, provenance, &["t", "j"], &[self.grid.nodes(), &self.values])
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let table = csvio::read_columns(input)?;
        let (t, j) = match (table.column("t"), table.column("j")) {
            (Some(t), Some(j)) => (t, j),
            _ => return Err(domain("release CSV needs columns t,j")),
        };
        Self::new(grid_from_nodes(t)?, j.to_vec())
    }
}

/// Mean of squared pointwise deviations over the shared observation grid.
pub fn mean_square_deviation(achieved: &ReleaseProfile, desired: &ReleaseProfile) -> Result<f64> {
    if !achieved.grid.matches(&desired.grid) {
        return Err(domain("profiles are sampled on different grids"));
    }
    let n = achieved.values.len() as f64;
    Ok(achieved
        .values
        .iter()
        .zip(&desired.values)
        .map(|(a, d)| (a - d) * (a - d))
        .sum::<f64>()
        / n)
}
