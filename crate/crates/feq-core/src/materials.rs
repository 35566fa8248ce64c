//! Substrate parameter catalog for the cryogenic materials that host
//! floating electrons.
//!
//! An electron above the surface polarizes the substrate and is attracted to
//! its own image charge Λe, with Λ = (ε_r − 1)/(ε_r + 1). The catalog keeps,
//! per material, the relative permittivity, the surface barrier the electron
//! cannot penetrate, the short-distance offset z₀ that makes the image
//! potential consistent with spectroscopy, and (for neon) the nuclear-spin
//! broadening of the electron spin.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::constants::{JOULE_PER_EV, NANOMETRE};
use crate::error::{Error, Result};

/// Catalog key for a substrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubstrateName {
    Helium4,
    Neon,
    Custom,
}

impl std::fmt::Display for SubstrateName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubstrateName::Helium4 => write!(f, "helium-4"),
            SubstrateName::Neon => write!(f, "neon"),
            SubstrateName::Custom => write!(f, "custom"),
        }
    }
}

/// Material parameters of one substrate, SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubstrateParams {
    pub name: SubstrateName,
    /// Relative permittivity ε_r (dimensionless, > 1 for physical substrates).
    pub epsilon_r: f64,
    /// Image-charge factor Λ = (ε_r − 1)/(ε_r + 1).
    pub image_factor: f64,
    /// Surface potential barrier U_b (J). This is the barrier the electron
    /// faces at z ≤ 0, distinct from the rms vacuum voltage of the resonator.
    pub barrier_height: f64,
    /// Short-distance offset z₀ (m) in the image potential 1/(z + z₀).
    pub offset_z0: f64,
    /// Nuclear-spin broadening γ_s (rad/s); present for natural neon,
    /// absent for helium-4 (spinless nuclei).
    pub nuclear_broadening: Option<f64>,
}

/// Λ = (ε_r − 1)/(ε_r + 1) for a substrate of relative permittivity ε_r.
///
/// Rejects ε_r < 1: no passive dielectric has a permittivity below vacuum.
pub fn image_charge_factor(epsilon_r: f64) -> Result<f64> {
    if !epsilon_r.is_finite() || epsilon_r < 1.0 {
        return Err(Error::invalid(format!(
            "relative permittivity must be >= 1, got {epsilon_r}"
        )));
    }
    Ok((epsilon_r - 1.0) / (epsilon_r + 1.0))
}

impl SubstrateParams {
    /// Liquid helium-4: ε_r = 1.056, barrier ≈ 1 eV, z₀ = 0.1 nm.
    pub fn helium4() -> Self {
        SubstrateParams::custom_unchecked(
            SubstrateName::Helium4,
            1.056,
            1.0 * JOULE_PER_EV,
            0.1 * NANOMETRE,
            None,
        )
    }

    /// Solid neon: ε_r = 1.244, barrier ≈ 0.7 eV, z₀ = 0.23 nm, and a
    /// 2π·10 kHz spin broadening from the nuclear spins of natural neon.
    pub fn neon() -> Self {
        SubstrateParams::custom_unchecked(
            SubstrateName::Neon,
            1.244,
            0.7 * JOULE_PER_EV,
            0.23 * NANOMETRE,
            Some(TAU * 10e3),
        )
    }

    /// A user-defined substrate. All invariants are checked.
    pub fn custom(
        epsilon_r: f64,
        barrier_height: f64,
        offset_z0: f64,
        nuclear_broadening: Option<f64>,
    ) -> Result<Self> {
        let params = SubstrateParams::custom_unchecked(
            SubstrateName::Custom,
            epsilon_r,
            barrier_height,
            offset_z0,
            nuclear_broadening,
        );
        params.validate()?;
        Ok(params)
    }

    fn custom_unchecked(
        name: SubstrateName,
        epsilon_r: f64,
        barrier_height: f64,
        offset_z0: f64,
        nuclear_broadening: Option<f64>,
    ) -> Self {
        let image_factor = (epsilon_r - 1.0) / (epsilon_r + 1.0);
        SubstrateParams {
            name,
            epsilon_r,
            image_factor,
            barrier_height,
            offset_z0,
            nuclear_broadening,
        }
    }

    /// Rebuild with a different image-potential offset, e.g. after
    /// spectroscopic calibration.
    pub fn with_offset_z0(mut self, offset_z0: f64) -> Self {
        self.offset_z0 = offset_z0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon_r > 1.0) {
            return Err(Error::invalid(format!(
                "substrate {}: epsilon_r must be > 1, got {}",
                self.name, self.epsilon_r
            )));
        }
        let expected = image_charge_factor(self.epsilon_r)?;
        if (self.image_factor - expected).abs() > 1e-12 * expected.max(1e-300) {
            return Err(Error::invalid(format!(
                "substrate {}: image factor {} inconsistent with epsilon_r {}",
                self.name, self.image_factor, self.epsilon_r
            )));
        }
        if !(self.image_factor > 0.0 && self.image_factor < 1.0) {
            return Err(Error::invalid(format!(
                "substrate {}: image factor must lie in (0, 1), got {}",
                self.name, self.image_factor
            )));
        }
        if !(self.barrier_height > 0.0) {
            return Err(Error::invalid(format!(
                "substrate {}: barrier height must be positive, got {} J",
                self.name, self.barrier_height
            )));
        }
        if !(self.offset_z0 >= 0.0) {
            return Err(Error::invalid(format!(
                "substrate {}: offset z0 must be non-negative, got {} m",
                self.name, self.offset_z0
            )));
        }
        if let Some(gamma) = self.nuclear_broadening {
            if !(gamma >= 0.0) {
                return Err(Error::invalid(format!(
                    "substrate {}: nuclear broadening must be non-negative, got {}",
                    self.name, gamma
                )));
            }
        }
        Ok(())
    }
}

/// Look up a catalog substrate. `Custom` is rejected: custom substrates must
/// be built with explicit fields via [`SubstrateParams::custom`].
pub fn substrate(name: SubstrateName) -> Result<SubstrateParams> {
    match name {
        SubstrateName::Helium4 => Ok(SubstrateParams::helium4()),
        SubstrateName::Neon => Ok(SubstrateParams::neon()),
        SubstrateName::Custom => Err(Error::invalid(
            "custom substrates require explicit fields; use SubstrateParams::custom",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_has_no_image_charge() {
        assert_eq!(image_charge_factor(1.0).unwrap(), 0.0);
    }

    #[test]
    fn image_factor_helium_and_neon() {
        // Direct evaluation of (ε_r − 1)/(ε_r + 1).
        assert_relative_eq!(
            image_charge_factor(1.056).unwrap(),
            0.056 / 2.056,
            max_relative = 1e-15
        );
        assert!((image_charge_factor(1.056).unwrap() - 0.02724).abs() < 1e-5);
        assert!((image_charge_factor(1.244).unwrap() - 0.10873).abs() < 1e-5);
    }

    #[test]
    fn image_factor_rejects_unphysical_permittivity() {
        assert!(image_charge_factor(0.9).is_err());
        assert!(image_charge_factor(f64::NAN).is_err());
    }

    #[test]
    fn catalog_entries_match_reference_values() {
        let he = substrate(SubstrateName::Helium4).unwrap();
        assert_eq!(he.epsilon_r, 1.056);
        assert_relative_eq!(he.barrier_height, 1.0 * JOULE_PER_EV, max_relative = 1e-15);
        assert_relative_eq!(he.offset_z0, 0.1e-9, max_relative = 1e-15);
        assert!(he.nuclear_broadening.is_none());

        let ne = substrate(SubstrateName::Neon).unwrap();
        assert_eq!(ne.epsilon_r, 1.244);
        assert_relative_eq!(ne.barrier_height, 0.7 * JOULE_PER_EV, max_relative = 1e-15);
        assert_relative_eq!(ne.offset_z0, 0.23e-9, max_relative = 1e-15);
        assert_relative_eq!(
            ne.nuclear_broadening.unwrap(),
            TAU * 10e3,
            max_relative = 1e-15
        );
    }

    #[test]
    fn catalog_image_factor_consistent_with_formula() {
        for params in [SubstrateParams::helium4(), SubstrateParams::neon()] {
            let expected = image_charge_factor(params.epsilon_r).unwrap();
            assert!((params.image_factor - expected).abs() / expected < 1e-12);
            params.validate().unwrap();
        }
    }

    #[test]
    fn custom_substrate_requires_physical_permittivity() {
        assert!(SubstrateParams::custom(1.0, JOULE_PER_EV, 0.0, None).is_err());
        assert!(substrate(SubstrateName::Custom).is_err());
        assert!(SubstrateParams::custom(1.5, 0.5 * JOULE_PER_EV, 0.1e-9, None).is_ok());
    }
}
