//! Initial-loading design for multi-laminated release devices.
//!
//! The release flux of a sealed slab is a first-kind integral transform of its
//! initial drug loading. This crate discretizes that transform (and two smooth
//! benchmark operators) by the compound trapezoid rule, regularizes the
//! inversion with spectral filter functions, picks the parameter on an
//! L-curve, and closes the loop through an independent series solution of the
//! forward diffusion problem.
//!
//! ```
//! use laminate::prelude::*;
//!
//! let problem = Problem::with_defaults(ScenarioId::Case2).unwrap();
//! let shape = FilterShape::of(FilterFamily::ModifiedTikhonov);
//! let report = problem.run(&shape, &NoiseSpec::none(), &Selection::lcurve()).unwrap();
//! assert!(report.msd < 0.1);
//! ```

pub mod csvio;
pub mod error;
pub mod forward;
pub mod kernel;
pub mod lcurve;
pub mod model;
pub mod regularization;
pub mod report;
pub mod scenario;
pub mod system;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::csvio::Provenance;
    pub use crate::error::Error;
    pub use crate::forward::{concentration, flux, fourier_coefficients};
    pub use crate::kernel::{kernel_value, KernelKind, KernelSpec, SeriesControl};
    pub use crate::lcurve::{find_corner, sweep, LCurve};
    pub use crate::model::{make_grid, mean_square_deviation, ConcentrationProfile, Grid1D, ReleaseProfile};
    pub use crate::regularization::{
        apriori_alpha, decompose, filter_value, solve_filtered, AprioriRule, FilterFamily, FilterShape, FilterSpec,
        SvdSystem,
    };
    pub use crate::scenario::{
        compare_methods, desired_flux, run_inversion, Grids, Problem, RunReport, ScenarioId, Selection,
    };
    pub use crate::system::{assemble, contaminate, exact_rhs, FredholmExample, NoiseDistribution, NoiseSpec};
}
