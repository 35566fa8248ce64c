//! Browser demo bindings: three interactive views onto the toolkit.
//!
//! Each export takes plain numbers/strings from the page and returns a JSON
//! payload ready for canvas plotting:
//!
//! - [`spectrum_curves`] — potential and Rydberg wavefunctions against the
//!   distance from the surface, with the pressing field as the knob;
//! - [`stark_curve`] — transition frequency f₁₂ and state heights across a
//!   field sweep;
//! - [`transmission_curve`] — dispersive readout: |t_c|(Δ₀) with and without
//!   the Rydberg transition plus the derived SNR and sensitivity.
//!
//! The payload builders are ordinary Rust (tested on the host); the
//! `wasm_bindgen` wrappers only serialize.

use std::f64::consts::TAU;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use feq_core::config::{MaterialChoice, MaterialsSection};
use feq_core::constants::{PhysicalConstants, NANOMETRE};
use feq_core::couplings::ResonatorElectrical;
use feq_core::readout::{
    readout_figures, transmission, RelaxationBasis, SolverOptions, TwoLevelReadoutModel,
};
use feq_core::schrodinger1d::{build_potential, solve, stark_sweep, Grid1D};
use feq_core::{Error, Result};

/// Scale used to overlay wavefunctions on the potential plot: GHz of
/// vertical extent per unit of nm-normalized amplitude.
const DISPLAY_GHZ_PER_AMPLITUDE: f64 = 700.0;

fn material(name: &str) -> Result<feq_core::materials::SubstrateParams> {
    let choice: MaterialChoice = name.parse()?;
    choice.resolve(&MaterialsSection::default())
}

#[derive(Serialize)]
pub struct LevelCurve {
    pub n: usize,
    pub energy_ghz: f64,
    pub mean_z_nm: f64,
    /// Energy-offset display curve: energy_ghz + 700 · ψ√nm.
    pub display_ghz: Vec<f64>,
}

#[derive(Serialize)]
pub struct SpectrumPayload {
    pub material: String,
    pub eperp_v_per_m: f64,
    pub z_nm: Vec<f64>,
    pub potential_ghz: Vec<f64>,
    pub levels: Vec<LevelCurve>,
    pub f12_ghz: f64,
    pub dipole_nm: f64,
}

pub fn spectrum_payload(
    material_name: &str,
    eperp_v_per_m: f64,
    levels: usize,
) -> Result<SpectrumPayload> {
    if !(1..=6).contains(&levels) {
        return Err(Error::invalid("demo supports 1 to 6 levels"));
    }
    let constants = PhysicalConstants::codata2018();
    let substrate = material(material_name)?;
    let grid = Grid1D::default();
    let potential = build_potential(&constants, &substrate, eperp_v_per_m, &grid)?;
    let spectrum = solve(&constants, &potential, levels.max(2))?;

    let z_nm: Vec<f64> = (0..grid.len()).map(|i| grid.z(i) / NANOMETRE).collect();
    let potential_ghz: Vec<f64> = potential
        .values
        .iter()
        .map(|v| v / constants.planck / 1e9)
        .collect();
    let mut curves = Vec::new();
    for n in 1..=levels {
        let energy_ghz = spectrum.energy(n) / constants.planck / 1e9;
        let display_ghz = spectrum.wavefunctions[n - 1]
            .iter()
            .map(|psi| energy_ghz + DISPLAY_GHZ_PER_AMPLITUDE * psi * NANOMETRE.sqrt())
            .collect();
        curves.push(LevelCurve {
            n,
            energy_ghz,
            mean_z_nm: spectrum.mean_position(n) / NANOMETRE,
            display_ghz,
        });
    }
    Ok(SpectrumPayload {
        material: format!("{}", substrate.name),
        eperp_v_per_m,
        z_nm,
        potential_ghz,
        levels: curves,
        f12_ghz: spectrum.transition_frequency(&constants, 1, 2) / 1e9,
        dipole_nm: spectrum.dipole_length() / NANOMETRE,
    })
}

#[derive(Serialize)]
pub struct StarkPayload {
    pub material: String,
    pub eperp_v_per_m: Vec<f64>,
    pub f12_ghz: Vec<f64>,
    pub z1_nm: Vec<f64>,
    pub z2_nm: Vec<f64>,
    pub trend: i8,
}

pub fn stark_payload(
    material_name: &str,
    min_v_per_m: f64,
    max_v_per_m: f64,
    points: usize,
) -> Result<StarkPayload> {
    if !(2..=201).contains(&points) {
        return Err(Error::invalid("demo sweep supports 2 to 201 points"));
    }
    let constants = PhysicalConstants::codata2018();
    let substrate = material(material_name)?;
    let fields = feq_core::config::sweep_values(
        min_v_per_m,
        max_v_per_m,
        points,
        feq_core::config::SweepScale::Linear,
    )?;
    let sweep = stark_sweep(&constants, &substrate, &Grid1D::default(), &fields, 2)?;
    Ok(StarkPayload {
        material: format!("{}", substrate.name),
        eperp_v_per_m: sweep.points.iter().map(|p| p.e_perp).collect(),
        f12_ghz: sweep.points.iter().map(|p| p.f12 / 1e9).collect(),
        z1_nm: sweep.points.iter().map(|p| p.z1 / NANOMETRE).collect(),
        z2_nm: sweep.points.iter().map(|p| p.z2 / NANOMETRE).collect(),
        trend: sweep.f12_trend,
    })
}

#[derive(Serialize)]
pub struct TransmissionPayload {
    pub delta0_mhz: Vec<f64>,
    pub tc_abs: Vec<f64>,
    pub tc_ref_abs: Vec<f64>,
    pub chi_re_s: f64,
    pub chi_im_s: f64,
    pub g_c_mhz: f64,
    pub snr: f64,
    pub sensitivity_f_per_sqrt_hz: f64,
    pub delta_capacitance_af: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn transmission_payload(
    epsilon_ghz: f64,
    drive_ghz: f64,
    dressed_relaxation: bool,
    gamma1_mhz: f64,
    gamma_phi_khz: f64,
    scan_halfwidth_kappa: f64,
    points: usize,
) -> Result<TransmissionPayload> {
    if !(2..=801).contains(&points) {
        return Err(Error::invalid("demo scan supports 2 to 801 points"));
    }
    let constants = PhysicalConstants::codata2018();
    let model = TwoLevelReadoutModel {
        epsilon: constants.planck * epsilon_ghz * 1e9,
        drive: constants.planck * drive_ghz * 1e9,
        probe_amplitude: constants.planck * 10e6,
        probe_frequency: TAU * 100e6,
        gamma1: TAU * gamma1_mhz * 1e6,
        gamma_phi: TAU * gamma_phi_khz * 1e3,
        relaxation_basis: if dressed_relaxation {
            RelaxationBasis::Dressed
        } else {
            RelaxationBasis::Bare
        },
    };
    let resonator = ResonatorElectrical::new(2e-12, TAU * 100e6, 0.01, TAU * 0.4e6)?;
    let figures = readout_figures(
        &constants,
        &model,
        &resonator,
        100.0,
        1.0,
        1e-6,
        &SolverOptions::default(),
    )?;

    let half = scan_halfwidth_kappa.clamp(0.5, 20.0) * resonator.kappa;
    let scan = feq_core::config::sweep_values(
        figures.delta0 - half,
        figures.delta0 + half,
        points,
        feq_core::config::SweepScale::Linear,
    )?;
    let mut delta0_mhz = Vec::with_capacity(points);
    let mut tc_abs = Vec::with_capacity(points);
    let mut tc_ref_abs = Vec::with_capacity(points);
    for delta0 in scan {
        let t_c = transmission(figures.chi, figures.g_c, delta0, resonator.kappa)?;
        let t_ref = transmission(Default::default(), figures.g_c, delta0, resonator.kappa)?;
        delta0_mhz.push(delta0 / TAU / 1e6);
        tc_abs.push(t_c.norm());
        tc_ref_abs.push(t_ref.norm());
    }
    Ok(TransmissionPayload {
        delta0_mhz,
        tc_abs,
        tc_ref_abs,
        chi_re_s: figures.chi.re,
        chi_im_s: figures.chi.im,
        g_c_mhz: figures.g_c / TAU / 1e6,
        snr: figures.snr,
        sensitivity_f_per_sqrt_hz: figures.sensitivity,
        delta_capacitance_af: figures.delta_capacitance * 1e18,
    })
}

fn to_json<T: Serialize>(payload: &T) -> String {
    serde_json::to_string(payload).expect("payload serializes")
}

/// Rydberg spectrum view. `material` is "helium" or "neon", the field in
/// V/m, `levels` 1..=6. Returns a JSON `SpectrumPayload`.
#[wasm_bindgen]
pub fn spectrum_curves(material: &str, eperp_v_per_m: f64, levels: usize) -> std::result::Result<String, JsError> {
    Ok(to_json(&spectrum_payload(material, eperp_v_per_m, levels)?))
}

/// Stark sweep view. Returns a JSON `StarkPayload`.
#[wasm_bindgen]
pub fn stark_curve(
    material: &str,
    min_v_per_m: f64,
    max_v_per_m: f64,
    points: usize,
) -> std::result::Result<String, JsError> {
    Ok(to_json(&stark_payload(material, min_v_per_m, max_v_per_m, points)?))
}

/// Dispersive-readout view. Returns a JSON `TransmissionPayload`.
#[wasm_bindgen]
pub fn transmission_curve(
    epsilon_ghz: f64,
    drive_ghz: f64,
    dressed_relaxation: bool,
    gamma1_mhz: f64,
    gamma_phi_khz: f64,
    scan_halfwidth_kappa: f64,
    points: usize,
) -> std::result::Result<String, JsError> {
    Ok(to_json(&transmission_payload(
        epsilon_ghz,
        drive_ghz,
        dressed_relaxation,
        gamma1_mhz,
        gamma_phi_khz,
        scan_halfwidth_kappa,
        points,
    )?))
}
