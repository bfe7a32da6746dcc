//! CSV bundle for a run: `profile_v.csv`, `flux_achieved.csv`,
//! `flux_desired.csv`, `lcurve.csv` and `summary.csv`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::csvio::{self, Cell, Provenance};
use crate::error::Result;
use crate::scenario::RunReport;

pub const SUMMARY_HEADER: [&str; 8] = [
    "method",
    "alpha",
    "sigma",
    "r",
    "delta",
    "seed",
    "msd",
    "solution_error",
];

impl RunReport {
    /// Run-specific provenance lines appended to `base`.
    pub fn provenance(&self, base: &Provenance) -> Provenance {
        let mut p = base.clone();
        p.push("scenario", self.scenario);
        p.push("method", self.filter.family);
        p.push("alpha", csvio::format_float(self.filter.alpha));
        p.push("sigma", self.filter.sigma);
        p.push("r", self.filter.r);
        p.push("selection", &self.selection);
        p.push("delta", self.noise.delta);
        p.push("seed", self.noise.seed);
        p.push("noise", self.noise.distribution.label());
        p.push("t_min", self.grids.t_min());
        p.push("n_source", self.grids.source.len());
        p.push("m_obs", self.grids.obs.len());
        let negatives = self.negative_nodes();
        if negatives > 0 {
            p.push("negative_nodes", negatives);
        }
        p
    }

    pub fn summary_row(&self) -> Vec<Cell> {
        vec![
            self.filter.family.label().into(),
            self.filter.alpha.into(),
            self.filter.sigma.into(),
            self.filter.r.into(),
            self.noise.delta.into(),
            self.noise.seed.into(),
            self.msd.into(),
            self.solution_error.map_or(Cell::Text(String::new()), Cell::Num),
        ]
    }

    /// Writes the per-run files (everything but the summary) into `dir`.
    pub fn write_bundle(&self, dir: &Path, base: &Provenance) -> Result<()> {
        fs::create_dir_all(dir)?;
        let prov = self.provenance(base);
        with_file(&dir.join("profile_v.csv"), |w| self.profile.write_csv(w, &prov))?;
        let t = self.grids.obs.nodes();
        with_file(&dir.join("flux_achieved.csv"), |w| {
            csvio::write_columns(w, &prov, &["t", "j"], &[t, &self.achieved])
        })?;
        with_file(&dir.join("flux_desired.csv"), |w| {
            csvio::write_columns(w, &prov, &["t", "j"], &[t, &self.desired])
        })?;
        if let Some(curve) = &self.lcurve {
            with_file(&dir.join("lcurve.csv"), |w| curve.write_csv(w, &prov))?;
        }
        Ok(())
    }
}

pub fn write_summary<W: Write>(out: W, reports: &[&RunReport], provenance: &Provenance) -> Result<()> {
    let rows: Vec<Vec<Cell>> = reports.iter().map(|r| r.summary_row()).collect();
    csvio::write_rows(out, provenance, &SUMMARY_HEADER, &rows)
}

pub fn write_summary_file(path: &Path, reports: &[&RunReport], provenance: &Provenance) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    with_file(path, |w| write_summary(w, reports, provenance))
}

pub(crate) fn with_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}
