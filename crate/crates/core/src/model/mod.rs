//! Nondimensional model vocabulary: grids, sampled profiles, units and the
//! deviation metric used to score a release.

mod grid;
mod profile;
mod units;

pub use grid::{make_grid, Grid1D};
pub use profile::{mean_square_deviation, ConcentrationProfile, ReleaseProfile};
pub use units::Dimensionalization;
