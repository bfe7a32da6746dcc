use crate::error::{domain, Result};

/// Reference scales mapping the dimensional slab problem onto the unit interval.
///
/// Solvers never consult this; it only converts inputs and outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimensionalization {
    pub reference_concentration: f64,
    pub reference_diffusivity: f64,
    pub thickness: f64,
    pub diffusivity: f64,
}

impl Dimensionalization {
    pub fn new(
        reference_concentration: f64,
        reference_diffusivity: f64,
        thickness: f64,
        diffusivity: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("reference concentration", reference_concentration),
            ("reference diffusivity", reference_diffusivity),
            ("thickness", thickness),
            ("diffusivity", diffusivity),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self {
            reference_concentration,
            reference_diffusivity,
            thickness,
            diffusivity,
        })
    }

    /// Constant-diffusivity model with `D0 = D`, so the scaled diffusivity is 1.
    pub fn with_unit_diffusivity(concentration: f64, diffusivity: f64, thickness: f64) -> Result<Self> {
        Self::new(concentration, diffusivity, thickness, diffusivity)
    }

    pub fn scaled_diffusivity(&self) -> f64 {
        self.diffusivity / self.reference_diffusivity
    }

    pub fn position(&self, x: f64) -> f64 {
        x / self.thickness
    }

    pub fn time(&self, tau: f64) -> f64 {
        self.reference_diffusivity * tau / (self.thickness * self.thickness)
    }

    pub fn concentration(&self, c: f64) -> f64 {
        c / self.reference_concentration
    }

    pub fn flux(&self, j: f64) -> f64 {
        j * self.thickness / (self.reference_diffusivity * self.reference_concentration)
    }

    pub fn physical_position(&self, x: f64) -> f64 {
        x * self.thickness
    }

    pub fn physical_time(&self, t: f64) -> f64 {
        t * self.thickness * self.thickness / self.reference_diffusivity
    }

    pub fn physical_concentration(&self, c: f64) -> f64 {
        c * self.reference_concentration
    }

    pub fn physical_flux(&self, j: f64) -> f64 {
        j * self.reference_diffusivity * self.reference_concentration / self.thickness
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let d = Dimensionalization::with_unit_diffusivity(2.5, 1e-10, 3e-3).unwrap();
        assert_eq!(d.scaled_diffusivity(), 1.0);
        for v in [0.0, 0.3, 7.0] {
            assert!((d.physical_time(d.time(v)) - v).abs() <= 1e-12 * v.max(1.0));
            assert!((d.physical_flux(d.flux(v)) - v).abs() <= 1e-12 * v.max(1.0));
            assert!((d.physical_concentration(d.concentration(v)) - v).abs() <= 1e-12 * v.max(1.0));
            assert!((d.physical_position(d.position(v)) - v).abs() <= 1e-12 * v.max(1.0));
        }
        assert!((d.position(3e-3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(Dimensionalization::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(Dimensionalization::new(-1.0, 1.0, 1.0, 1.0).is_err());
    }
}
