//! Closed-form coupling strengths and rates for floating-electron qubits.
//!
//! Everything here is straightforward arithmetic on top of the constants
//! registry: the vacuum voltage fluctuation of an LC resonator, the
//! charge-photon coupling it produces through the lever arm, the effective
//! AC magnetic field of EDSR (with and without the Landau-level correction
//! for a perpendicular external field), the double-dot spin-photon coupling,
//! the spin decoherence inherited from the charge through hybridization, and
//! the dipole-dipole strength between distant electrons.
//!
//! All rates are angular frequencies (rad/s), all magnetic quantities tesla,
//! all energies joule. The perturbative formulas refuse to evaluate within
//! 1e-6 relative distance of their poles instead of returning huge values.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Relative distance to a pole below which an evaluation is refused.
pub const POLE_GUARD: f64 = 1e-6;

/// Electrical parameters of the readout resonator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonatorElectrical {
    /// Capacitance C (F).
    pub capacitance: f64,
    /// Resonance frequency ω_r (rad/s).
    pub omega_r: f64,
    /// Differential lever arm α (dimensionless, ≤ 1).
    pub lever_arm: f64,
    /// Photon loss rate κ (rad/s).
    pub kappa: f64,
}

impl ResonatorElectrical {
    pub fn new(capacitance: f64, omega_r: f64, lever_arm: f64, kappa: f64) -> Result<Self> {
        let r = ResonatorElectrical {
            capacitance,
            omega_r,
            lever_arm,
            kappa,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.capacitance > 0.0 && self.omega_r > 0.0 && self.kappa > 0.0) {
            return Err(Error::invalid(format!(
                "resonator parameters must be positive: C = {}, omega_r = {}, kappa = {}",
                self.capacitance, self.omega_r, self.kappa
            )));
        }
        if !(self.lever_arm > 0.0 && self.lever_arm <= 1.0) {
            return Err(Error::invalid(format!(
                "lever arm must lie in (0, 1], got {}",
                self.lever_arm
            )));
        }
        Ok(())
    }

    /// rms vacuum voltage of this resonator (V).
    pub fn vacuum_voltage(&self, constants: &PhysicalConstants) -> f64 {
        (constants.hbar * self.omega_r / (2.0 * self.capacitance)).sqrt()
    }

    /// Charge-photon coupling g_c (rad/s) of this resonator.
    pub fn charge_photon_g(&self, constants: &PhysicalConstants) -> f64 {
        constants.elementary_charge * self.lever_arm * self.vacuum_voltage(constants)
            / constants.hbar
    }
}

/// In-plane trap parameters of one electron site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapParams {
    /// Orbital frequency ω₀ (rad/s).
    pub orbital_frequency: f64,
    /// Orbital spread l₀ = √(ħ/m_e ω₀) (m).
    pub orbital_spread: f64,
    /// Dot size / dipole length d (m).
    pub dot_size: f64,
    /// Orbital splitting 2t (J) for double-dot-like traps.
    pub orbital_splitting: f64,
}

impl TrapParams {
    /// Derive the kinematic fields from the orbital frequency: l₀ from ω₀
    /// and d = l₀/√2 (single-dot zero-point dipole).
    pub fn from_orbital_frequency(
        constants: &PhysicalConstants,
        omega0: f64,
        orbital_splitting: f64,
    ) -> Result<Self> {
        let l0 = orbital_spread(constants, omega0)?;
        Ok(TrapParams {
            orbital_frequency: omega0,
            orbital_spread: l0,
            dot_size: dot_size(l0)?,
            orbital_splitting,
        })
    }
}

/// Magnetic configuration at the electron site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagneticEnvironment {
    /// External field B₀ (T).
    pub b0: f64,
    /// Field gradient Δb (T/m) perpendicular to B₀ along the drive axis.
    pub gradient: f64,
    /// Larmor frequency ω_L = g μ_B B₀/ħ (rad/s).
    pub larmor: f64,
    /// Cyclotron frequency ω_c = e B₀/m_e (rad/s), for B₀ normal to the
    /// plane.
    pub cyclotron: f64,
    /// Drive field amplitude E_AC (V/m).
    pub drive_field: f64,
}

impl MagneticEnvironment {
    pub fn from_field(
        constants: &PhysicalConstants,
        b0: f64,
        gradient: f64,
        drive_field: f64,
    ) -> Result<Self> {
        Ok(MagneticEnvironment {
            b0,
            gradient,
            larmor: larmor(constants, b0)?,
            cyclotron: cyclotron(constants, b0)?,
            drive_field,
        })
    }
}

/// One computed coupling figure with its inputs echoed for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct CouplingResult {
    /// What was computed, e.g. "charge_photon_g".
    pub quantity: String,
    pub value: f64,
    /// SI unit of `value`.
    pub unit: String,
    /// Identifier of the closed form used.
    pub formula: String,
    /// Inputs in SI units.
    pub inputs: BTreeMap<String, f64>,
}

impl CouplingResult {
    fn new(quantity: &str, value: f64, unit: &str, formula: &str) -> Self {
        CouplingResult {
            quantity: quantity.into(),
            value,
            unit: unit.into(),
            formula: formula.into(),
            inputs: BTreeMap::new(),
        }
    }

    fn with(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.into(), value);
        self
    }
}

/// rms voltage of the vacuum fluctuation across a capacitance: √(ħω_r/2C).
pub fn vacuum_voltage(constants: &PhysicalConstants, capacitance: f64, omega_r: f64) -> Result<f64> {
    if !(capacitance > 0.0 && omega_r > 0.0) {
        return Err(Error::invalid(format!(
            "vacuum voltage needs positive C and omega_r, got {capacitance}, {omega_r}"
        )));
    }
    Ok((constants.hbar * omega_r / (2.0 * capacitance)).sqrt())
}

/// Charge-photon coupling g_c = e α v_rms / ħ (rad/s).
pub fn charge_photon_g(constants: &PhysicalConstants, alpha: f64, v_rms: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!(
            "lever arm must lie in [0, 1], got {alpha}"
        )));
    }
    if !(v_rms >= 0.0) {
        return Err(Error::invalid(format!(
            "rms voltage must be non-negative, got {v_rms}"
        )));
    }
    Ok(constants.elementary_charge * alpha * v_rms / constants.hbar)
}

/// Effective AC magnetic field of EDSR (T):
/// B_AC = Δb · e E_AC l₀² ω₀ / (2ħ(ω₀² − ω_L²)). Sign is retained.
pub fn edsr_field(
    constants: &PhysicalConstants,
    gradient: f64,
    e_ac: f64,
    l0: f64,
    omega0: f64,
    omega_l: f64,
) -> Result<f64> {
    let denom = omega0 * omega0 - omega_l * omega_l;
    if denom.abs() < POLE_GUARD * omega0 * omega0 {
        return Err(Error::Singularity(format!(
            "EDSR drive resonant with Larmor frequency (omega0 = {omega0}, omega_L = {omega_l})"
        )));
    }
    Ok(gradient * constants.elementary_charge * e_ac * l0 * l0 * omega0
        / (2.0 * constants.hbar * denom))
}

/// EDSR field with the Landau-level dressing for a perpendicular B₀:
/// ω₀ → ω̃ = ω₀√(1 + ω_c²/4ω₀²) and ω_L → ω_L/2, giving
/// B_AC = Δb · e E_AC l₀² ω̃ / (2ħ(ω̃² − ω_L²/4)).
pub fn edsr_field_landau(
    constants: &PhysicalConstants,
    gradient: f64,
    e_ac: f64,
    l0: f64,
    omega0: f64,
    omega_l: f64,
    omega_c: f64,
) -> Result<f64> {
    let dressed = omega0 * (1.0 + omega_c * omega_c / (4.0 * omega0 * omega0)).sqrt();
    let denom = dressed * dressed - omega_l * omega_l / 4.0;
    if denom.abs() < POLE_GUARD * dressed * dressed {
        return Err(Error::Singularity(format!(
            "Landau-dressed EDSR at resonance (omega_tilde = {dressed}, omega_L/2 = {})",
            omega_l / 2.0
        )));
    }
    Ok(gradient * constants.elementary_charge * e_ac * l0 * l0 * dressed
        / (2.0 * constants.hbar * denom))
}

/// Double-dot spin-photon coupling derived from the charge-photon coupling.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DqdSpinPhoton {
    /// Effective magnetic coupling field B_sp = Δb ħ g_c d / (4 Δ_so) (T).
    pub b_sp: f64,
    /// Spin-photon coupling g_s = g μ_B B_sp / ħ (rad/s).
    pub g_s: f64,
}

/// Spin-orbit detuning Δ_so = 2t − ħω_L (J) from the orbital splitting and
/// the Larmor frequency.
pub fn spin_orbit_detuning(constants: &PhysicalConstants, two_t: f64, omega_l: f64) -> f64 {
    two_t - constants.hbar * omega_l
}

/// Spin-photon coupling of a double-dot-like trap:
/// B_sp = Δb (ħ g_c) d / (4 Δ_so), g_s = g μ_B B_sp / ħ.
///
/// `g_c` must follow the convention ħ g_c = e E₀ d.
pub fn dqd_spin_photon(
    constants: &PhysicalConstants,
    gradient: f64,
    g_c: f64,
    d: f64,
    delta_so: f64,
) -> Result<DqdSpinPhoton> {
    let scale = constants.hbar * g_c.abs() * d.abs() * gradient.abs() / 4.0;
    if delta_so.abs() < POLE_GUARD * scale.max(f64::MIN_POSITIVE) || delta_so == 0.0 {
        return Err(Error::Singularity(format!(
            "spin-orbit detuning too close to zero: {delta_so} J"
        )));
    }
    let b_sp = gradient * constants.hbar * g_c * d / (4.0 * delta_so);
    let g_s = constants.g_factor * constants.bohr_magneton * b_sp / constants.hbar;
    Ok(DqdSpinPhoton { b_sp, g_s })
}

/// Charge-induced spin decoherence and the validity of the perturbative
/// mixing behind it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpinDecoherence {
    /// (g μ_B Δb d / 2Δ_so)² γ_c (rad/s).
    pub rate: f64,
    /// Mixing parameter g μ_B Δb d / (2Δ_so) (dimensionless).
    pub mixing: f64,
    /// True when the mixing is small enough for the quadratic formula to be
    /// trustworthy (|mixing| ≤ 0.25); at order-unity mixing the spin simply
    /// inherits the full charge decoherence.
    pub within_validity: bool,
}

/// Spin decoherence rate inherited from the charge state through spin-charge
/// hybridization.
pub fn spin_decoherence_from_charge(
    constants: &PhysicalConstants,
    gradient: f64,
    d: f64,
    delta_so: f64,
    gamma_c: f64,
) -> Result<SpinDecoherence> {
    if delta_so == 0.0 {
        return Err(Error::Singularity(
            "spin-orbit detuning must be nonzero".into(),
        ));
    }
    if !(gamma_c >= 0.0) {
        return Err(Error::invalid(format!(
            "charge decoherence rate must be non-negative, got {gamma_c}"
        )));
    }
    let mixing =
        constants.g_factor * constants.bohr_magneton * gradient * d / (2.0 * delta_so);
    Ok(SpinDecoherence {
        rate: mixing * mixing * gamma_c,
        mixing,
        within_validity: mixing.abs() <= 0.25,
    })
}

/// Minimum separation-to-dipole ratio for the point-dipole estimate.
pub const DIPOLE_VALIDITY_RATIO: f64 = 10.0;

/// Coulomb dipole-dipole coupling between two electrons with transition
/// dipole length `d` separated by `r`: J = (e d)² / (4π ε₀ r³ ħ) (rad/s).
pub fn dipole_dipole_coupling(constants: &PhysicalConstants, d: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!("separation must be positive, got {r}")));
    }
    if !(d >= 0.0) {
        return Err(Error::invalid(format!("dipole length must be non-negative, got {d}")));
    }
    if r <= DIPOLE_VALIDITY_RATIO * d {
        return Err(Error::invalid(format!(
            "point-dipole estimate needs r > {DIPOLE_VALIDITY_RATIO} d (r = {r}, d = {d})"
        )));
    }
    let ed = constants.elementary_charge * d;
    Ok(ed * ed
        / (4.0 * std::f64::consts::PI * constants.vacuum_permittivity * r.powi(3) * constants.hbar))
}

/// Larmor frequency ω_L = g μ_B B₀ / ħ (rad/s).
pub fn larmor(constants: &PhysicalConstants, b0: f64) -> Result<f64> {
    if !(b0 > 0.0) {
        return Err(Error::invalid(format!("field must be positive, got {b0} T")));
    }
    Ok(constants.g_factor * constants.bohr_magneton * b0 / constants.hbar)
}

/// Cyclotron frequency ω_c = e B₀ / m_e (rad/s).
pub fn cyclotron(constants: &PhysicalConstants, b0: f64) -> Result<f64> {
    if !(b0 > 0.0) {
        return Err(Error::invalid(format!("field must be positive, got {b0} T")));
    }
    Ok(constants.elementary_charge * b0 / constants.electron_mass)
}

/// Orbital spread l₀ = √(ħ / m_e ω₀) (m).
pub fn orbital_spread(constants: &PhysicalConstants, omega0: f64) -> Result<f64> {
    if !(omega0 > 0.0) {
        return Err(Error::invalid(format!(
            "orbital frequency must be positive, got {omega0}"
        )));
    }
    Ok((constants.hbar / (constants.electron_mass * omega0)).sqrt())
}

/// Dot size d = l₀ / √2 (m).
pub fn dot_size(l0: f64) -> Result<f64> {
    if !(l0 > 0.0) {
        return Err(Error::invalid(format!(
            "orbital spread must be positive, got {l0}"
        )));
    }
    Ok(l0 / std::f64::consts::SQRT_2)
}

/// Inputs for the standard coupling report produced by the CLI.
#[derive(Debug, Clone, Copy)]
pub struct CouplingScenario {
    /// Resonator used for charge readout.
    pub resonator: ResonatorElectrical,
    /// Magnetic gradient Δb (T/m). The cobalt micromagnet preset is
    /// 0.1 mT/nm = 1e5 T/m.
    pub gradient: f64,
    /// External field B₀ (T).
    pub b0: f64,
    /// Drive field E_AC (V/m).
    pub drive_field: f64,
    /// Orbital frequency ω₀ (rad/s).
    pub omega0: f64,
    /// Interdot distance d (m) for the double-dot estimates.
    pub interdot_distance: f64,
    /// Charge-photon coupling g_c (rad/s) used in the double-dot formulas.
    pub g_c: f64,
    /// Spin-orbit detuning Δ_so = 2t − ħω_L (J).
    pub delta_so: f64,
    /// Charge decoherence rate γ_c (rad/s).
    pub gamma_c: f64,
    /// Electron separation r (m) for the dipole-dipole estimate.
    pub separation: f64,
}

/// Evaluate the full set of coupling figures for one scenario.
pub fn evaluate_scenario(
    constants: &PhysicalConstants,
    s: &CouplingScenario,
) -> Result<Vec<CouplingResult>> {
    s.resonator.validate()?;
    let mut out = Vec::new();

    let v_rms = vacuum_voltage(constants, s.resonator.capacitance, s.resonator.omega_r)?;
    out.push(
        CouplingResult::new("vacuum_voltage", v_rms, "V", "sqrt(hbar*omega_r/2C)")
            .with("capacitance_F", s.resonator.capacitance)
            .with("omega_r_rad_per_s", s.resonator.omega_r),
    );

    let g_c_res = charge_photon_g(constants, s.resonator.lever_arm, v_rms)?;
    out.push(
        CouplingResult::new("charge_photon_g", g_c_res, "rad/s", "e*alpha*v_rms/hbar")
            .with("lever_arm", s.resonator.lever_arm)
            .with("v_rms_V", v_rms),
    );

    let omega_l = larmor(constants, s.b0)?;
    out.push(
        CouplingResult::new("larmor", omega_l, "rad/s", "g*mu_B*B0/hbar").with("b0_T", s.b0),
    );
    let omega_c = cyclotron(constants, s.b0)?;
    out.push(
        CouplingResult::new("cyclotron", omega_c, "rad/s", "e*B0/m_e").with("b0_T", s.b0),
    );
    let l0 = orbital_spread(constants, s.omega0)?;
    out.push(
        CouplingResult::new("orbital_spread", l0, "m", "sqrt(hbar/m_e*omega0)")
            .with("omega0_rad_per_s", s.omega0),
    );
    out.push(
        CouplingResult::new("dot_size", dot_size(l0)?, "m", "l0/sqrt(2)").with("l0_m", l0),
    );

    let b_ac = edsr_field(constants, s.gradient, s.drive_field, l0, s.omega0, omega_l)?;
    out.push(
        CouplingResult::new(
            "edsr_field",
            b_ac,
            "T",
            "grad*e*E_AC*l0^2*omega0/(2hbar(omega0^2-omega_L^2))",
        )
        .with("gradient_T_per_m", s.gradient)
        .with("drive_field_V_per_m", s.drive_field),
    );
    let b_ac_landau = edsr_field_landau(
        constants,
        s.gradient,
        s.drive_field,
        l0,
        s.omega0,
        omega_l,
        omega_c,
    )?;
    out.push(
        CouplingResult::new(
            "edsr_field_landau",
            b_ac_landau,
            "T",
            "grad*e*E_AC*l0^2*omega_tilde/(2hbar(omega_tilde^2-omega_L^2/4))",
        )
        .with("omega_c_rad_per_s", omega_c),
    );

    let dqd = dqd_spin_photon(constants, s.gradient, s.g_c, s.interdot_distance, s.delta_so)?;
    out.push(
        CouplingResult::new("dqd_b_sp", dqd.b_sp, "T", "grad*hbar*g_c*d/(4*delta_so)")
            .with("g_c_rad_per_s", s.g_c)
            .with("interdot_distance_m", s.interdot_distance)
            .with("delta_so_J", s.delta_so),
    );
    out.push(
        CouplingResult::new("dqd_spin_photon_g", dqd.g_s, "rad/s", "g*mu_B*B_sp/hbar")
            .with("b_sp_T", dqd.b_sp),
    );

    let deco = spin_decoherence_from_charge(
        constants,
        s.gradient,
        s.interdot_distance,
        s.delta_so,
        s.gamma_c,
    )?;
    out.push(
        CouplingResult::new(
            "spin_decoherence_from_charge",
            deco.rate,
            "rad/s",
            "(g*mu_B*grad*d/(2*delta_so))^2*gamma_c",
        )
        .with("gamma_c_rad_per_s", s.gamma_c)
        .with("mixing", deco.mixing)
        .with("within_validity", if deco.within_validity { 1.0 } else { 0.0 }),
    );

    // Two-qubit estimate uses the single-dot zero-point dipole; the interdot
    // distance would put r inside the point-dipole validity bound.
    let dipole = dot_size(l0)?;
    let j = dipole_dipole_coupling(constants, dipole, s.separation)?;
    out.push(
        CouplingResult::new("dipole_dipole", j, "rad/s", "(e*d)^2/(4pi*eps0*r^3*hbar)")
            .with("dipole_length_m", dipole)
            .with("separation_m", s.separation),
    );

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::TAU;

    fn c() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    #[test]
    fn vacuum_voltage_reference_point() {
        // C = 2 pF, ω_r = 2π·100 MHz → ~130 nV.
        let v = vacuum_voltage(&c(), 2e-12, TAU * 100e6).unwrap();
        assert!((v - 130e-9).abs() < 2e-9, "v_rms = {} nV", v * 1e9);
    }

    #[test]
    fn vacuum_voltage_square_root_scaling() {
        let cst = c();
        let v1 = vacuum_voltage(&cst, 2e-12, TAU * 100e6).unwrap();
        let v2 = vacuum_voltage(&cst, 8e-12, TAU * 100e6).unwrap();
        assert_relative_eq!(v2, v1 / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn vacuum_voltage_arithmetic_oracle() {
        // Independent arithmetic route for C = 1 fF, ω_r = 2π·6 GHz.
        let cst = c();
        let expected = (1.054571817e-34 * TAU * 6e9 / (2.0 * 1e-15)).sqrt();
        let v = vacuum_voltage(&cst, 1e-15, TAU * 6e9).unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-12);
        assert!(vacuum_voltage(&cst, 0.0, 1.0).is_err());
        assert!(vacuum_voltage(&cst, 1e-12, -1.0).is_err());
    }

    #[test]
    fn charge_photon_reference_point() {
        // α = 0.01 with the 2 pF / 100 MHz resonator → g_c/2π ≈ 0.31 MHz.
        let cst = c();
        let v = vacuum_voltage(&cst, 2e-12, TAU * 100e6).unwrap();
        let g = charge_photon_g(&cst, 0.01, v).unwrap();
        assert!((g / TAU - 0.31e6).abs() < 0.02e6, "g_c/2π = {} MHz", g / TAU / 1e6);
    }

    #[test]
    fn charge_photon_trivial_and_derived_points() {
        let cst = c();
        assert_eq!(charge_photon_g(&cst, 0.0, 130e-9).unwrap(), 0.0);
        // α = 0.03, quarter-wave resonator energy scale.
        let v = vacuum_voltage(&cst, 0.4e-15, TAU * 6e9).unwrap();
        let g = charge_photon_g(&cst, 0.03, v).unwrap();
        let expected = 1.602176634e-19 * 0.03 * v / 1.054571817e-34;
        assert_relative_eq!(g, expected, max_relative = 1e-12);
        assert!(charge_photon_g(&cst, 1.5, 1e-9).is_err());
    }

    #[test]
    fn edsr_field_trivial_zeros_and_oracle() {
        let cst = c();
        let l0 = orbital_spread(&cst, TAU * 20e9).unwrap();
        assert_eq!(
            edsr_field(&cst, 0.0, 1e3, l0, TAU * 20e9, TAU * 14e9).unwrap(),
            0.0
        );
        assert_eq!(
            edsr_field(&cst, 1e5, 0.0, l0, TAU * 20e9, TAU * 14e9).unwrap(),
            0.0
        );
        // Hand-evaluated value for Δb = 0.1 mT/nm, E_AC = 1e3 V/m,
        // ω₀ = 2π·20 GHz, ω_L = 2π·14 GHz.
        let omega0 = TAU * 20e9;
        let omega_l = TAU * 14e9;
        let expected = 1e5 * 1.602176634e-19 * 1e3 * l0 * l0 * omega0
            / (2.0 * 1.054571817e-34 * (omega0 * omega0 - omega_l * omega_l));
        let b = edsr_field(&cst, 1e5, 1e3, l0, omega0, omega_l).unwrap();
        assert_relative_eq!(b, expected, max_relative = 1e-12);
    }

    #[test]
    fn edsr_field_errors_at_pole() {
        let cst = c();
        let l0 = orbital_spread(&cst, TAU * 20e9).unwrap();
        match edsr_field(&cst, 1e5, 1e3, l0, TAU * 20e9, TAU * 20e9) {
            Err(Error::Singularity(_)) => {}
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn landau_version_reduces_to_halved_larmor_at_zero_cyclotron() {
        let cst = c();
        let l0 = orbital_spread(&cst, TAU * 20e9).unwrap();
        let with_landau =
            edsr_field_landau(&cst, 1e5, 1e3, l0, TAU * 20e9, TAU * 14e9, 0.0).unwrap();
        let plain = edsr_field(&cst, 1e5, 1e3, l0, TAU * 20e9, TAU * 7e9).unwrap();
        assert_eq!(with_landau, plain);
    }

    #[test]
    fn landau_dressing_is_monotone_in_cyclotron_frequency() {
        let omega0: f64 = TAU * 20e9;
        let mut last = omega0;
        for ghz in [0.0, 5.0, 10.0, 28.0, 56.0] {
            let omega_c = TAU * ghz * 1e9;
            let dressed = omega0 * (1.0 + omega_c * omega_c / (4.0 * omega0 * omega0)).sqrt();
            assert!(dressed >= omega0);
            assert!(dressed >= last - 1e-9);
            last = dressed;
        }
    }

    #[test]
    fn cyclotron_feeds_dressed_frequency_at_one_tesla() {
        // ω_c(1 T)/2π ≈ 28.0 GHz.
        let omega_c = cyclotron(&c(), 1.0).unwrap();
        assert!((omega_c / TAU - 28.0e9).abs() < 0.1e9);
    }

    #[test]
    fn dqd_spin_photon_reference_points() {
        let cst = c();
        let g_c = TAU * 3.5e6;
        let d = 100e-9;
        let gradient = 1e5; // 0.1 mT/nm

        // Δ_so/h = 1 GHz → g_s/2π ≈ 0.245 MHz (quoted as 0.2 MHz at one
        // significant figure).
        let delta_so = cst.planck * 1e9;
        let r = dqd_spin_photon(&cst, gradient, g_c, d, delta_so).unwrap();
        let oracle = {
            let b_sp = gradient * 1.054571817e-34 * g_c * d / (4.0 * delta_so);
            2.00231930436256 * 9.2740100783e-24 * b_sp / 1.054571817e-34
        };
        assert_relative_eq!(r.g_s, oracle, max_relative = 1e-10);
        assert!((r.g_s / TAU - 0.245e6).abs() < 0.01e6, "g_s/2π = {} MHz", r.g_s / TAU / 1e6);
        assert!((r.g_s / TAU - 0.2e6).abs() / 0.2e6 < 0.30);

        // Δ_so/h = 100 MHz → g_s/2π ≈ 2.45 MHz (quoted as 2 MHz).
        let r = dqd_spin_photon(&cst, gradient, g_c, d, cst.planck * 100e6).unwrap();
        assert!((r.g_s / TAU - 2.45e6).abs() < 0.1e6, "g_s/2π = {} MHz", r.g_s / TAU / 1e6);
        assert!((r.g_s / TAU - 2e6).abs() / 2e6 < 0.30);

        // Δb = 0 → no coupling.
        let r = dqd_spin_photon(&cst, 0.0, g_c, d, delta_so).unwrap();
        assert_eq!(r.g_s, 0.0);

        assert!(dqd_spin_photon(&cst, gradient, g_c, d, 0.0).is_err());
    }

    #[test]
    fn spin_decoherence_reference_point() {
        let cst = c();
        // Δb = 0.1 mT/nm, d = 100 nm, Δ_so/h = 1 GHz, γ_c/2π = 0.36 MHz
        // → rate ≈ 2π·7 kHz, well inside validity.
        let r = spin_decoherence_from_charge(
            &cst,
            1e5,
            100e-9,
            cst.planck * 1e9,
            TAU * 0.36e6,
        )
        .unwrap();
        assert!((r.rate / TAU - 7e3).abs() / 7e3 < 0.10, "rate/2π = {} kHz", r.rate / TAU / 1e3);
        assert!(r.within_validity);

        // γ_c = 0 → zero rate.
        let r = spin_decoherence_from_charge(&cst, 1e5, 100e-9, cst.planck * 1e9, 0.0).unwrap();
        assert_eq!(r.rate, 0.0);

        // Δ_so/h = 100 MHz → order-unity mixing, flagged invalid.
        let r = spin_decoherence_from_charge(
            &cst,
            1e5,
            100e-9,
            cst.planck * 100e6,
            TAU * 0.36e6,
        )
        .unwrap();
        assert!(!r.within_validity, "mixing = {}", r.mixing);
    }

    #[test]
    fn dipole_dipole_reference_and_scaling() {
        let cst = c();
        // d = 10 nm, r = 1 µm; independent arithmetic oracle for
        // (ed)²/(4πε₀ r³ ħ).
        let ed = 1.602176634e-19 * 10e-9;
        let expected =
            ed * ed / (4.0 * std::f64::consts::PI * 8.8541878128e-12 * 1e-18 * 1.054571817e-34);
        let j = dipole_dipole_coupling(&cst, 10e-9, 1e-6).unwrap();
        assert_relative_eq!(j, expected, max_relative = 1e-10);
        // ≈ 2π·34.8 MHz as an angular rate.
        assert!((j / TAU - 34.8e6).abs() < 0.3e6, "J/2π = {} MHz", j / TAU / 1e6);

        // Cubic law: doubling the separation drops J by 8.
        let j2 = dipole_dipole_coupling(&cst, 10e-9, 2e-6).unwrap();
        assert_relative_eq!(j / j2, 8.0, max_relative = 1e-12);

        // Zero dipole → zero coupling.
        assert_eq!(dipole_dipole_coupling(&cst, 0.0, 1e-6).unwrap(), 0.0);

        // Validity bound r > 10 d.
        assert!(dipole_dipole_coupling(&cst, 10e-9, 50e-9).is_err());
    }

    #[test]
    fn kinematic_helpers_reference_values() {
        let cst = c();
        // B₀ = 0.5 T → ω_L/2π ≈ 14.0 GHz.
        let wl = larmor(&cst, 0.5).unwrap();
        assert!((wl / TAU - 14.0e9).abs() < 0.1e9);
        // ω₀ = 2π·10 GHz → l₀ ≈ 43 nm, d ≈ 30 nm.
        let l0 = orbital_spread(&cst, TAU * 10e9).unwrap();
        assert!((l0 - 43e-9).abs() < 1e-9, "l0 = {} nm", l0 * 1e9);
        let d = dot_size(l0).unwrap();
        assert!((d - 30e-9).abs() < 1e-9, "d = {} nm", d * 1e9);

        assert!(larmor(&cst, 0.0).is_err());
        assert!(cyclotron(&cst, -1.0).is_err());
        assert!(orbital_spread(&cst, 0.0).is_err());
        assert!(dot_size(0.0).is_err());
    }

    #[test]
    fn trap_params_satisfy_kinematic_relations() {
        let cst = c();
        let trap = TrapParams::from_orbital_frequency(&cst, TAU * 10e9, cst.planck * 1e9)
            .unwrap();
        assert_relative_eq!(
            trap.orbital_spread,
            (cst.hbar / (cst.electron_mass * trap.orbital_frequency)).sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            trap.dot_size,
            trap.orbital_spread / 2f64.sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn magnetic_environment_consistent() {
        let cst = c();
        let env = MagneticEnvironment::from_field(&cst, 0.5, 1e5, 1e3).unwrap();
        assert_relative_eq!(
            env.larmor,
            cst.g_factor * cst.bohr_magneton * 0.5 / cst.hbar,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            env.cyclotron,
            cst.elementary_charge * 0.5 / cst.electron_mass,
            max_relative = 1e-12
        );
    }

    #[test]
    fn scenario_report_covers_all_quantities() {
        let cst = c();
        let scenario = CouplingScenario {
            resonator: ResonatorElectrical::new(2e-12, TAU * 100e6, 0.01, TAU * 0.4e6).unwrap(),
            gradient: 1e5,
            b0: 0.5,
            drive_field: 1e3,
            omega0: TAU * 20e9,
            interdot_distance: 100e-9,
            g_c: TAU * 3.5e6,
            delta_so: cst.planck * 1e9,
            gamma_c: TAU * 0.36e6,
            separation: 1e-6,
        };
        let results = evaluate_scenario(&cst, &scenario).unwrap();
        let names: Vec<&str> = results.iter().map(|r| r.quantity.as_str()).collect();
        for expected in [
            "vacuum_voltage",
            "charge_photon_g",
            "larmor",
            "cyclotron",
            "orbital_spread",
            "dot_size",
            "edsr_field",
            "edsr_field_landau",
            "dqd_b_sp",
            "dqd_spin_photon_g",
            "spin_decoherence_from_charge",
            "dipole_dipole",
        ] {
            assert!(names.contains(&expected), "missing {expected}");
        }
        for r in &results {
            assert!(r.value.is_finite(), "{} not finite", r.quantity);
        }
    }
}
