//! Physical constants (CODATA 2018) and unit conversion helpers.
//!
//! Every formula in the crate takes its constants from a [`PhysicalConstants`]
//! value instead of hard-coding them. That keeps one source of truth and lets
//! the test suite rerun the same formulas in a rescaled coherent unit system
//! to catch hidden unit assumptions.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One joule per electronvolt.
pub const JOULE_PER_EV: f64 = 1.602_176_634e-19;
/// Metres per nanometre.
pub const NANOMETRE: f64 = 1e-9;

/// Fundamental constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Elementary charge e (C).
    pub elementary_charge: f64,
    /// Planck constant h (J s).
    pub planck: f64,
    /// Reduced Planck constant ħ = h/2π (J s).
    pub hbar: f64,
    /// Electron mass m_e (kg).
    pub electron_mass: f64,
    /// Vacuum permittivity ε₀ (F/m).
    pub vacuum_permittivity: f64,
    /// Bohr magneton μ_B (J/T).
    pub bohr_magneton: f64,
    /// Free-electron Landé g factor (dimensionless, magnitude).
    pub g_factor: f64,
    /// Rydberg constant expressed as a frequency, R∞/h (Hz).
    pub rydberg_frequency: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 recommended values.
    pub const fn codata2018() -> Self {
        PhysicalConstants {
            elementary_charge: 1.602_176_634e-19,
            planck: 6.626_070_15e-34,
            hbar: 1.054_571_817e-34,
            electron_mass: 9.109_383_701_5e-31,
            vacuum_permittivity: 8.854_187_812_8e-12,
            bohr_magneton: 9.274_010_078_3e-24,
            g_factor: 2.002_319_304_362_56,
            rydberg_frequency: 3.289_841_960_250_8e15,
        }
    }

    /// Coulomb prefactor e²/4πε₀ (J m).
    pub fn coulomb_prefactor(&self) -> f64 {
        self.elementary_charge * self.elementary_charge
            / (4.0 * std::f64::consts::PI * self.vacuum_permittivity)
    }

    /// Rydberg energy R∞ = m_e e⁴ / 8ε₀²h² (J), derived from the stored
    /// constants rather than the tabulated frequency.
    pub fn rydberg_energy(&self) -> f64 {
        let e2 = self.elementary_charge * self.elementary_charge;
        self.electron_mass * e2 * e2
            / (8.0 * self.vacuum_permittivity.powi(2) * self.planck.powi(2))
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("elementary_charge", self.elementary_charge),
            ("planck", self.planck),
            ("hbar", self.hbar),
            ("electron_mass", self.electron_mass),
            ("vacuum_permittivity", self.vacuum_permittivity),
            ("bohr_magneton", self.bohr_magneton),
            ("g_factor", self.g_factor),
            ("rydberg_frequency", self.rydberg_frequency),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::invalid(format!(
                    "physical constant {name} must be positive and finite, got {value}"
                )));
            }
        }
        let hbar_rel = (self.hbar - self.planck / TAU).abs() / self.hbar;
        if hbar_rel > 1e-9 {
            return Err(Error::invalid(format!(
                "hbar must equal planck/2pi (relative mismatch {hbar_rel:.3e})"
            )));
        }
        Ok(())
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Angular frequency (rad/s) to ordinary frequency (Hz).
pub fn to_hz(omega: f64) -> f64 {
    omega / TAU
}

/// Ordinary frequency (Hz) to angular frequency (rad/s).
pub fn to_angular(frequency: f64) -> f64 {
    frequency * TAU
}
