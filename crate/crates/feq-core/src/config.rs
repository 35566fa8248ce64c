//! JSON run configuration.
//!
//! One JSON document configures every command. Unknown keys are rejected
//! outright (config drift protection) and every physical quantity carries
//! its unit in the key name (`eperp_V_per_m`, `t_over_h_GHz`, …) because the
//! underlying literature mixes GHz, eV, nm and mT/nm freely and silent unit
//! mistakes are the dominant failure mode of tools like this one.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, JOULE_PER_EV, NANOMETRE};
use crate::couplings::{CouplingScenario, ResonatorElectrical};
use crate::error::{Error, Result};
use crate::materials::{SubstrateName, SubstrateParams};
use crate::readout::{RelaxationBasis, SolverOptions, TwoLevelReadoutModel};
use crate::schrodinger1d::Grid1D;

/// Top-level configuration document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub materials: MaterialsSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub spectrum: SpectrumSection,
    #[serde(default)]
    pub stark_sweep: StarkSweepSection,
    #[serde(default)]
    pub couplings: CouplingsSection,
    #[serde(default)]
    pub readout: ReadoutSection,
    #[serde(default)]
    pub escape: EscapeSection,
    #[serde(default)]
    pub convergence: ConvergenceSection,
    /// Worker pool width for sweeps; `None` falls back to FEQ_THREADS or the
    /// machine parallelism.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Output path override; per-command defaults apply when absent.
    #[serde(default)]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Canonical echo of the fully resolved configuration.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serialization cannot fail")
    }
}

/// Substrate catalog override. Values are in human units (eV, nm, kHz) and
/// default to the built-in catalog.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialsSection {
    #[serde(default = "MaterialEntry::helium4")]
    pub helium: MaterialEntry,
    #[serde(default = "MaterialEntry::neon")]
    pub neon: MaterialEntry,
}

impl Default for MaterialsSection {
    fn default() -> Self {
        MaterialsSection {
            helium: MaterialEntry::helium4(),
            neon: MaterialEntry::neon(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct MaterialEntry {
    /// Relative permittivity ε_r (dimensionless).
    pub epsilon_r: f64,
    /// Surface barrier U_b (eV).
    pub barrier_height_eV: f64,
    /// Image-potential offset z₀ (nm).
    pub z0_nm: f64,
    /// Nuclear-spin broadening γ_s/2π (kHz), omitted when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nuclear_broadening_kHz: Option<f64>,
}

impl MaterialEntry {
    pub fn helium4() -> Self {
        MaterialEntry::from_params(&SubstrateParams::helium4())
    }

    pub fn neon() -> Self {
        MaterialEntry::from_params(&SubstrateParams::neon())
    }

    pub fn from_params(params: &SubstrateParams) -> Self {
        MaterialEntry {
            epsilon_r: params.epsilon_r,
            barrier_height_eV: params.barrier_height / JOULE_PER_EV,
            z0_nm: params.offset_z0 / NANOMETRE,
            nuclear_broadening_kHz: params.nuclear_broadening.map(|g| g / TAU / 1e3),
        }
    }

    pub fn to_params(&self, name: SubstrateName) -> Result<SubstrateParams> {
        let params = SubstrateParams::custom(
            self.epsilon_r,
            self.barrier_height_eV * JOULE_PER_EV,
            self.z0_nm * NANOMETRE,
            self.nuclear_broadening_kHz.map(|k| k * 1e3 * TAU),
        )?;
        Ok(SubstrateParams { name, ..params })
    }
}

/// Substrate selector used by commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaterialChoice {
    Helium,
    Neon,
}

impl MaterialChoice {
    pub fn resolve(&self, materials: &MaterialsSection) -> Result<SubstrateParams> {
        match self {
            MaterialChoice::Helium => materials.helium.to_params(SubstrateName::Helium4),
            MaterialChoice::Neon => materials.neon.to_params(SubstrateName::Neon),
        }
    }
}

impl std::str::FromStr for MaterialChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "helium" | "helium4" | "he" => Ok(MaterialChoice::Helium),
            "neon" | "ne" => Ok(MaterialChoice::Neon),
            other => Err(Error::Config(format!(
                "unknown material '{other}' (expected helium or neon)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub z_min_nm: f64,
    pub z_max_nm: f64,
    pub step_nm: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            z_min_nm: -20.0,
            z_max_nm: 100.0,
            step_nm: 0.1,
        }
    }
}

impl GridSection {
    pub fn to_grid(&self) -> Result<Grid1D> {
        Grid1D::new(
            self.z_min_nm * NANOMETRE,
            self.z_max_nm * NANOMETRE,
            self.step_nm * NANOMETRE,
        )
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct SpectrumSection {
    pub material: MaterialChoice,
    pub eperp_V_per_m: f64,
    pub levels: usize,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        SpectrumSection {
            material: MaterialChoice::Helium,
            eperp_V_per_m: 0.0,
            levels: 3,
        }
    }
}

/// Axis scale for sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepScale {
    Linear,
    Log,
}

/// Evenly spaced sweep values (inclusive endpoints).
pub fn sweep_values(min: f64, max: f64, points: usize, scale: SweepScale) -> Result<Vec<f64>> {
    if points < 1 {
        return Err(Error::invalid("sweep needs at least one point"));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    match scale {
        SweepScale::Linear => Ok((0..points)
            .map(|i| min + (max - min) * i as f64 / (points - 1) as f64)
            .collect()),
        SweepScale::Log => {
            if min <= 0.0 || max <= 0.0 {
                return Err(Error::invalid(
                    "log sweep requires strictly positive endpoints",
                ));
            }
            let (lmin, lmax) = (min.ln(), max.ln());
            Ok((0..points)
                .map(|i| (lmin + (lmax - lmin) * i as f64 / (points - 1) as f64).exp())
                .collect())
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct StarkSweepSection {
    pub material: MaterialChoice,
    pub eperp_min_V_per_m: f64,
    pub eperp_max_V_per_m: f64,
    pub points: usize,
    pub scale: SweepScale,
    pub levels: usize,
}

impl Default for StarkSweepSection {
    fn default() -> Self {
        StarkSweepSection {
            material: MaterialChoice::Helium,
            eperp_min_V_per_m: 0.0,
            eperp_max_V_per_m: 2.0e4,
            points: 21,
            scale: SweepScale::Linear,
            levels: 2,
        }
    }
}

impl StarkSweepSection {
    pub fn values(&self) -> Result<Vec<f64>> {
        sweep_values(
            self.eperp_min_V_per_m,
            self.eperp_max_V_per_m,
            self.points,
            self.scale,
        )
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct CouplingsSection {
    pub capacitance_pF: f64,
    pub omega_r_over_2pi_MHz: f64,
    pub lever_arm: f64,
    pub kappa_over_2pi_MHz: f64,
    /// Magnetic gradient Δb (mT/nm); the cobalt micromagnet estimate is 0.1.
    pub gradient_mT_per_nm: f64,
    pub b0_T: f64,
    pub drive_field_V_per_m: f64,
    pub omega0_over_2pi_GHz: f64,
    pub interdot_distance_nm: f64,
    pub g_c_over_2pi_MHz: f64,
    pub delta_so_over_h_GHz: f64,
    pub gamma_c_over_2pi_MHz: f64,
    pub separation_um: f64,
}

impl Default for CouplingsSection {
    fn default() -> Self {
        CouplingsSection {
            capacitance_pF: 2.0,
            omega_r_over_2pi_MHz: 100.0,
            lever_arm: 0.01,
            kappa_over_2pi_MHz: 0.4,
            gradient_mT_per_nm: 0.1,
            b0_T: 0.5,
            drive_field_V_per_m: 1.0e3,
            omega0_over_2pi_GHz: 20.0,
            interdot_distance_nm: 100.0,
            g_c_over_2pi_MHz: 3.5,
            delta_so_over_h_GHz: 1.0,
            gamma_c_over_2pi_MHz: 0.36,
            separation_um: 1.0,
        }
    }
}

impl CouplingsSection {
    pub fn to_scenario(&self, constants: &PhysicalConstants) -> Result<CouplingScenario> {
        Ok(CouplingScenario {
            resonator: ResonatorElectrical::new(
                self.capacitance_pF * 1e-12,
                TAU * self.omega_r_over_2pi_MHz * 1e6,
                self.lever_arm,
                TAU * self.kappa_over_2pi_MHz * 1e6,
            )?,
            gradient: self.gradient_mT_per_nm * 1e-3 / NANOMETRE,
            b0: self.b0_T,
            drive_field: self.drive_field_V_per_m,
            omega0: TAU * self.omega0_over_2pi_GHz * 1e9,
            interdot_distance: self.interdot_distance_nm * NANOMETRE,
            g_c: TAU * self.g_c_over_2pi_MHz * 1e6,
            delta_so: constants.planck * self.delta_so_over_h_GHz * 1e9,
            gamma_c: TAU * self.gamma_c_over_2pi_MHz * 1e6,
            separation: self.separation_um * 1e-6,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct ReadoutSection {
    /// MW detuning ε/h (GHz); 0 is the sweet spot.
    pub epsilon_over_h_GHz: f64,
    /// Transverse drive t/h (GHz).
    pub t_over_h_GHz: f64,
    /// Probe amplitude δε/h (MHz).
    pub probe_amplitude_over_h_MHz: f64,
    /// Probe frequency ω_m/2π (MHz).
    pub omega_m_over_2pi_MHz: f64,
    pub gamma1_over_2pi_MHz: f64,
    pub gamma_phi_over_2pi_kHz: f64,
    pub relaxation_basis: RelaxationBasis,
    pub capacitance_pF: f64,
    pub omega_r_over_2pi_MHz: f64,
    pub lever_arm: f64,
    pub kappa_over_2pi_MHz: f64,
    pub n_bar: f64,
    pub n_noise: f64,
    pub t_int_us: f64,
    /// Steps per probe period; null lets the integrator choose.
    #[serde(default)]
    pub steps_per_period: Option<usize>,
    pub steady_tolerance: f64,
    /// Half-width of the Δ₀ scan written to the CSV (units of κ).
    pub delta0_scan_halfwidth_kappa: f64,
    pub delta0_scan_points: usize,
}

impl Default for ReadoutSection {
    fn default() -> Self {
        ReadoutSection {
            epsilon_over_h_GHz: 0.0,
            t_over_h_GHz: 0.5,
            probe_amplitude_over_h_MHz: 10.0,
            omega_m_over_2pi_MHz: 100.0,
            gamma1_over_2pi_MHz: 1.0,
            gamma_phi_over_2pi_kHz: 100.0,
            relaxation_basis: RelaxationBasis::Dressed,
            capacitance_pF: 2.0,
            omega_r_over_2pi_MHz: 100.0,
            lever_arm: 0.01,
            kappa_over_2pi_MHz: 0.4,
            n_bar: 100.0,
            n_noise: 1.0,
            t_int_us: 1.0,
            steps_per_period: None,
            steady_tolerance: 1e-8,
            delta0_scan_halfwidth_kappa: 4.0,
            delta0_scan_points: 201,
        }
    }
}

impl ReadoutSection {
    pub fn to_model(&self, constants: &PhysicalConstants) -> TwoLevelReadoutModel {
        TwoLevelReadoutModel {
            epsilon: constants.planck * self.epsilon_over_h_GHz * 1e9,
            drive: constants.planck * self.t_over_h_GHz * 1e9,
            probe_amplitude: constants.planck * self.probe_amplitude_over_h_MHz * 1e6,
            probe_frequency: TAU * self.omega_m_over_2pi_MHz * 1e6,
            gamma1: TAU * self.gamma1_over_2pi_MHz * 1e6,
            gamma_phi: TAU * self.gamma_phi_over_2pi_kHz * 1e3,
            relaxation_basis: self.relaxation_basis,
        }
    }

    pub fn to_resonator(&self) -> Result<ResonatorElectrical> {
        ResonatorElectrical::new(
            self.capacitance_pF * 1e-12,
            TAU * self.omega_r_over_2pi_MHz * 1e6,
            self.lever_arm,
            TAU * self.kappa_over_2pi_MHz * 1e6,
        )
    }

    pub fn to_options(&self) -> SolverOptions {
        SolverOptions {
            steps_per_period: self.steps_per_period,
            steady_tolerance: self.steady_tolerance,
            max_periods: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct EscapeSection {
    pub material: MaterialChoice,
    pub n_bound: usize,
    pub n_escape: usize,
    pub eperp_min_V_per_m: f64,
    pub eperp_max_V_per_m: f64,
    /// Points of the magnitude scan written to the CSV.
    pub scan_points: usize,
}

impl Default for EscapeSection {
    fn default() -> Self {
        EscapeSection {
            material: MaterialChoice::Helium,
            n_bound: 1,
            n_escape: 2,
            eperp_min_V_per_m: -1.0e6,
            eperp_max_V_per_m: -1.0e2,
            scan_points: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSection {
    pub material: MaterialChoice,
}

impl Default for ConvergenceSection {
    fn default() -> Self {
        ConvergenceSection {
            material: MaterialChoice::Helium,
        }
    }
}
