//! Physical adsorption parameters and their dimensionless counterparts.
//!
//! Lengths scale with `L = (ħ²/(k m))^{1/4}`, energies with `ħω`,
//! `ω = √(k/m)`, and the wall sits at `q0 = d / L`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::fd_eigenvalues_richardson;
use crate::spectrum::{eigenvalue, WellConfig, DEFAULT_TOL, MAX_CLOSED_FORM_Q0};

/// Reduced Planck constant, J·s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Atomic mass unit, kg (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Elementary charge, J per eV.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;
pub const ANGSTROM: f64 = 1e-10;

pub const HYDROGEN_MASS_AMU: f64 = 1.00784;
pub const DEUTERIUM_MASS_AMU: f64 = 2.01410;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdsorptionSystem {
    mass: f64,
    force_constant: f64,
    wall_distance: f64,
    label: String,
}

impl AdsorptionSystem {
    /// SI units: kg, N/m, m.
    pub fn new(
        mass: f64,
        force_constant: f64,
        wall_distance: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidInput(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if !(force_constant.is_finite() && force_constant > 0.0) {
            return Err(Error::InvalidInput(format!(
                "force constant must be positive, got {force_constant}"
            )));
        }
        if !(wall_distance.is_finite() && wall_distance >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "wall distance must be non-negative, got {wall_distance}"
            )));
        }
        Ok(Self {
            mass,
            force_constant,
            wall_distance,
            label: label.into(),
        })
    }

    /// Mass in u, force constant in N/m, distance in Å.
    pub fn from_lab_units(
        mass_amu: f64,
        k_npm: f64,
        d_angstrom: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::new(
            mass_amu * ATOMIC_MASS_UNIT,
            k_npm,
            d_angstrom * ANGSTROM,
            label,
        )
    }

    pub fn preset(label: &str) -> Option<Self> {
        let (mass, d) = match label {
            "H-Pd100" => (HYDROGEN_MASS_AMU, 0.40),
            "D-Pd100" => (DEUTERIUM_MASS_AMU, 0.45),
            _ => return None,
        };
        Self::from_lab_units(mass, 15.0, d, label).ok()
    }

    pub fn preset_labels() -> &'static [&'static str] {
        &["H-Pd100", "D-Pd100"]
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn force_constant(&self) -> f64 {
        self.force_constant
    }

    pub fn wall_distance(&self) -> f64 {
        self.wall_distance
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessForm {
    pub length_unit: f64,
    pub omega: f64,
    pub q0: f64,
    pub energy_unit: f64,
}

pub fn dimensionless(sys: &AdsorptionSystem) -> DimensionlessForm {
    let length_unit = (HBAR * HBAR / (sys.force_constant * sys.mass)).powf(0.25);
    let omega = (sys.force_constant / sys.mass).sqrt();
    DimensionlessForm {
        length_unit,
        omega,
        q0: sys.wall_distance / length_unit,
        energy_unit: HBAR * omega,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroPointEnergy {
    pub epsilon0: f64,
    pub joule: f64,
    pub mev: f64,
    /// True when the finite-difference oracle supplied `epsilon0`.
    pub from_oracle: bool,
}

pub fn zero_point_energy(sys: &AdsorptionSystem) -> Result<ZeroPointEnergy> {
    let form = dimensionless(sys);
    let cfg = WellConfig::new(form.q0)?;
    let from_oracle = form.q0 > MAX_CLOSED_FORM_Q0;
    let epsilon0 = if from_oracle {
        fd_eigenvalues_richardson(&cfg, 0)?[0]
    } else {
        eigenvalue(0, &cfg, DEFAULT_TOL)?.epsilon
    };
    let joule = epsilon0 * form.energy_unit;
    Ok(ZeroPointEnergy {
        epsilon0,
        joule,
        mev: joule / ELECTRON_VOLT * 1e3,
        from_oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(AdsorptionSystem::new(0.0, 1.0, 0.0, "x").is_err());
        assert!(AdsorptionSystem::new(1.0, -1.0, 0.0, "x").is_err());
        assert!(AdsorptionSystem::new(1.0, 1.0, -1e-10, "x").is_err());
        assert!(AdsorptionSystem::new(1.0, 1.0, f64::NAN, "x").is_err());
        assert!(AdsorptionSystem::new(1.0, 1.0, 0.0, "x").is_ok());
    }

    #[test]
    fn presets() {
        assert!(AdsorptionSystem::preset("Li-Pd100").is_none());
        for label in AdsorptionSystem::preset_labels() {
            let sys = AdsorptionSystem::preset(label).unwrap();
            assert_eq!(sys.label(), *label);
        }
        let h = AdsorptionSystem::preset("H-Pd100").unwrap();
        assert!((h.wall_distance() - 0.4e-10).abs() < 1e-24);
    }

    #[test]
    fn unit_relations() {
        let sys = AdsorptionSystem::preset("H-Pd100").unwrap();
        let f = dimensionless(&sys);
        assert!((f.energy_unit - HBAR * f.omega).abs() <= 1e-15 * f.energy_unit);
        assert!(
            (f.length_unit.powi(2) - HBAR / (sys.mass() * f.omega)).abs()
                < 1e-12 * f.length_unit.powi(2)
        );
    }
}
