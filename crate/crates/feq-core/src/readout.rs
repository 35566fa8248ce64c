//! Dispersive LC-resonator readout of the Rydberg transition.
//!
//! The first two Rydberg states under microwave excitation reduce, in the
//! rotating frame of the MW drive, to a probed two-level system
//!
//! ```text
//! H_R(t) = (ε/2 + (δε/2) cos ω_m t) s_z + t s_x
//! ```
//!
//! with ε the MW detuning energy, t the transverse drive and δε the probe
//! amplitude seen through the lever arm. The module integrates the two-level
//! density matrix with relaxation to a periodic steady state, extracts the
//! first-harmonic susceptibility χ of ⟨s_z⟩, and evaluates the resonator
//! observables built on it: transmission t_c, contrast Δt_c, quantum
//! capacitance change ΔC, SNR and capacitance sensitivity S_c.
//!
//! Relaxation deserves care here: for Rydberg states energy relaxation acts
//! toward the ground state of the *bare* s_z (the lab-frame Rydberg ground),
//! not toward the dressed ground state of the rotating-frame Hamiltonian as
//! it would in a semiconductor double dot. Both variants are implemented and
//! selected by [`RelaxationBasis`].

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::constants::PhysicalConstants;
use crate::couplings::ResonatorElectrical;
use crate::error::{Error, Result};

/// Basis in which population decay and pure dephasing act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelaxationBasis {
    /// Decay toward the bare s_z ground state |1⟩ (Rydberg ground).
    Bare,
    /// Decay toward the ground state of (ν/2)σ_z, the dressed basis of the
    /// static rotating-frame Hamiltonian (semiconductor-double-dot habit).
    Dressed,
}

/// Rotating-frame two-level model of the probed Rydberg transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelReadoutModel {
    /// Detuning ε = h(f_MW − f_Rydberg) (J); may be negative.
    pub epsilon: f64,
    /// Transverse drive t = e E_MW z₁₂ / 2 (J).
    pub drive: f64,
    /// Probe amplitude δε = e E_m d = α e u_m (J). Must be non-negative;
    /// susceptibility extraction additionally requires it positive.
    pub probe_amplitude: f64,
    /// Probe angular frequency ω_m (rad/s).
    pub probe_frequency: f64,
    /// Relaxation rate γ₁ (rad/s).
    pub gamma1: f64,
    /// Pure dephasing rate γ_φ (rad/s); coherences decay at γ₁/2 + γ_φ.
    pub gamma_phi: f64,
    pub relaxation_basis: RelaxationBasis,
}

impl TwoLevelReadoutModel {
    /// Energy gap ν = √(ε² + 4t²) (J).
    pub fn gap(&self) -> f64 {
        (self.epsilon * self.epsilon + 4.0 * self.drive * self.drive).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("epsilon", self.epsilon),
            ("drive", self.drive),
            ("probe_amplitude", self.probe_amplitude),
            ("probe_frequency", self.probe_frequency),
            ("gamma1", self.gamma1),
            ("gamma_phi", self.gamma_phi),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite, got {v}")));
            }
        }
        if !(self.probe_frequency > 0.0) {
            return Err(Error::invalid(format!(
                "probe frequency must be positive, got {} rad/s",
                self.probe_frequency
            )));
        }
        if self.probe_amplitude < 0.0 {
            return Err(Error::invalid(format!(
                "probe amplitude must be non-negative, got {} J",
                self.probe_amplitude
            )));
        }
        if self.gamma1 < 0.0 || self.gamma_phi < 0.0 {
            return Err(Error::invalid("relaxation rates must be non-negative"));
        }
        Ok(())
    }
}

/// Integrator controls. `steps_per_period = None` picks the smallest step
/// count ≥ 256 that also resolves the fastest system rate (rate·dt < 0.1);
/// an explicit step count is validated against the same bound and rejected
/// if it violates it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SolverOptions {
    pub steps_per_period: Option<usize>,
    /// Periodic steady state declared when the mean |Δ⟨s_z⟩| between
    /// successive periods drops below this.
    pub steady_tolerance: f64,
    pub max_periods: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            steps_per_period: None,
            steady_tolerance: 1e-8,
            max_periods: 1_000_000,
        }
    }
}

/// Density-matrix health observed over the whole integration.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct RhoValidity {
    pub max_trace_error: f64,
    pub max_hermiticity_error: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

/// ⟨s_z⟩ over one probe period in the periodic steady state, sampled at
/// `steps_per_period + 1` uniformly spaced times (endpoints included).
#[derive(Debug, Clone)]
pub struct SteadyStateTrajectory {
    pub times: Vec<f64>,
    pub sz: Vec<f64>,
    pub steps_per_period: usize,
    pub periods_elapsed: usize,
    pub validity: RhoValidity,
}

// 2x2 complex matrices stored row-major: [m00, m01, m10, m11].
type M2 = [C64; 4];
// 2x2 real matrices, same layout.
type R2 = [f64; 4];

fn rmul(a: &R2, b: &M2) -> M2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn mulr(a: &M2, b: &R2) -> M2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn rtranspose(a: &R2) -> R2 {
    [a[0], a[2], a[1], a[3]]
}

fn rmatmul(a: &R2, b: &R2) -> R2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// One collapse channel √rate·L with L real, prepared for the dissipator
/// D(ρ) = KρKᵀ − ½(Gρ + ρG), G = KᵀK.
#[derive(Debug, Clone, Copy)]
struct Channel {
    k: R2,
    kt: R2,
    g: R2,
}

impl Channel {
    fn new(l: R2, rate: f64) -> Self {
        let s = rate.sqrt();
        let k = [l[0] * s, l[1] * s, l[2] * s, l[3] * s];
        let kt = rtranspose(&k);
        let g = rmatmul(&kt, &k);
        Channel { k, kt, g }
    }

    fn apply(&self, rho: &M2, out: &mut M2) {
        let krk = rmul(&self.k, &mulr(rho, &self.kt));
        let grho = rmul(&self.g, rho);
        let rhog = mulr(rho, &self.g);
        for i in 0..4 {
            out[i] += krk[i] - 0.5 * (grho[i] + rhog[i]);
        }
    }
}

/// Ground/excited eigenvectors of the static Hamiltonian
/// H = [[−ε/2, t], [t, ε/2]] (real, so real eigenvectors).
fn dressed_basis(epsilon: f64, t: f64) -> Result<([f64; 2], [f64; 2])> {
    let a = -epsilon / 2.0;
    let b = t;
    let nu2 = (a * a + b * b).sqrt();
    if nu2 == 0.0 {
        return Err(Error::Singularity(
            "dressed relaxation basis undefined for epsilon = t = 0".into(),
        ));
    }
    // Excited eigenvector (+ν/2), numerically stable branch.
    let (e0, e1) = if a <= 0.0 {
        (b, nu2 - a)
    } else {
        (nu2 + a, b)
    };
    let norm = (e0 * e0 + e1 * e1).sqrt();
    let excited = [e0 / norm, e1 / norm];
    let ground = [-excited[1], excited[0]];
    Ok((ground, excited))
}

fn channels(model: &TwoLevelReadoutModel) -> Result<Vec<Channel>> {
    let mut out = Vec::new();
    match model.relaxation_basis {
        RelaxationBasis::Bare => {
            // |1⟩⟨2| decay and s_z dephasing.
            if model.gamma1 > 0.0 {
                out.push(Channel::new([0.0, 1.0, 0.0, 0.0], model.gamma1));
            }
            if model.gamma_phi > 0.0 {
                out.push(Channel::new([-1.0, 0.0, 0.0, 1.0], model.gamma_phi / 2.0));
            }
        }
        RelaxationBasis::Dressed => {
            let (g, e) = dressed_basis(model.epsilon, model.drive)?;
            if model.gamma1 > 0.0 {
                // |g⟩⟨e|
                let l = [g[0] * e[0], g[0] * e[1], g[1] * e[0], g[1] * e[1]];
                out.push(Channel::new(l, model.gamma1));
            }
            if model.gamma_phi > 0.0 {
                // |e⟩⟨e| − |g⟩⟨g|
                let l = [
                    e[0] * e[0] - g[0] * g[0],
                    e[0] * e[1] - g[0] * g[1],
                    e[1] * e[0] - g[1] * g[0],
                    e[1] * e[1] - g[1] * g[1],
                ];
                out.push(Channel::new(l, model.gamma_phi / 2.0));
            }
        }
    }
    Ok(out)
}

/// dρ/dt = −i[H(t), ρ]/ħ + Σ D, with hz = (ε/2 + (δε/2)cos ω_m t)/ħ and
/// hx = t/ħ entering H/ħ = [[−hz, hx], [hx, hz]].
fn lindblad_rhs(hz: f64, hx: f64, channels: &[Channel], rho: &M2) -> M2 {
    let i = C64::new(0.0, 1.0);
    let m00 = hx * (rho[2] - rho[1]);
    let m01 = -2.0 * hz * rho[1] + hx * (rho[3] - rho[0]);
    let m10 = 2.0 * hz * rho[2] + hx * (rho[0] - rho[3]);
    let m11 = hx * (rho[1] - rho[2]);
    let mut out = [-i * m00, -i * m01, -i * m10, -i * m11];
    for ch in channels {
        ch.apply(rho, &mut out);
    }
    out
}

fn sz_of(rho: &M2) -> f64 {
    (rho[3] - rho[0]).re
}

fn update_validity(rho: &M2, v: &mut RhoValidity) {
    let trace = rho[0] + rho[3];
    v.max_trace_error = v.max_trace_error.max((trace - C64::new(1.0, 0.0)).norm());
    v.max_hermiticity_error = v
        .max_hermiticity_error
        .max((rho[1] - rho[2].conj()).norm());
    let mean = 0.5 * (rho[0].re + rho[3].re);
    let off = 0.5 * (rho[1] + rho[2].conj());
    let half_diff = 0.5 * (rho[0].re - rho[3].re);
    let radius = (half_diff * half_diff + off.norm_sqr()).sqrt();
    v.min_eigenvalue = v.min_eigenvalue.min(mean - radius);
    v.max_eigenvalue = v.max_eigenvalue.max(mean + radius);
}

/// Integrate the driven, damped two-level system to its periodic steady
/// state and return ⟨s_z⟩ over one probe period.
pub fn steady_state_sz(
    model: &TwoLevelReadoutModel,
    options: &SolverOptions,
) -> Result<SteadyStateTrajectory> {
    model.validate()?;
    if model.gamma1 + model.gamma_phi <= 0.0 {
        return Err(Error::invalid(
            "a dissipationless system never reaches a periodic steady state \
             (gamma1 + gamma_phi must be positive)",
        ));
    }
    if !(options.steady_tolerance > 0.0) {
        return Err(Error::invalid("steady-state tolerance must be positive"));
    }

    let c = PhysicalConstants::codata2018();
    let period = TAU / model.probe_frequency;
    let max_rate = model
        .probe_frequency
        .max((model.gap() + model.probe_amplitude) / c.hbar)
        .max(model.gamma1)
        .max(model.gamma_phi);
    let steps = match options.steps_per_period {
        Some(n) => {
            if n < 16 {
                return Err(Error::invalid(format!(
                    "steps_per_period must be at least 16, got {n}"
                )));
            }
            if max_rate * period / n as f64 >= 0.1 {
                return Err(Error::invalid(format!(
                    "step-resolution violation: {n} steps per period give \
                     rate*dt = {:.3} >= 0.1; need at least {} steps",
                    max_rate * period / n as f64,
                    (max_rate * period / 0.1).ceil() as usize + 1
                )));
            }
            n
        }
        None => 256usize.max((max_rate * period / 0.1).ceil() as usize + 1),
    };
    let dt = period / steps as f64;

    let chans = channels(model)?;
    let hx = model.drive / c.hbar;
    let hz_at = |tau: f64| {
        (model.epsilon / 2.0
            + model.probe_amplitude / 2.0 * (model.probe_frequency * tau).cos())
            / c.hbar
    };

    // Start from the relaxation ground state.
    let mut rho: M2 = match model.relaxation_basis {
        RelaxationBasis::Bare => [
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ],
        RelaxationBasis::Dressed => {
            let (g, _) = dressed_basis(model.epsilon, model.drive)?;
            [
                C64::new(g[0] * g[0], 0.0),
                C64::new(g[0] * g[1], 0.0),
                C64::new(g[1] * g[0], 0.0),
                C64::new(g[1] * g[1], 0.0),
            ]
        }
    };

    let mut validity = RhoValidity {
        max_trace_error: 0.0,
        max_hermiticity_error: 0.0,
        min_eigenvalue: f64::INFINITY,
        max_eigenvalue: f64::NEG_INFINITY,
    };
    update_validity(&rho, &mut validity);

    let mut prev: Option<Vec<f64>> = None;
    for periods in 1..=options.max_periods {
        let mut samples = Vec::with_capacity(steps + 1);
        samples.push(sz_of(&rho));
        for j in 0..steps {
            // Phase within the period; the drive is periodic so absolute
            // time never needs to grow.
            let tau = j as f64 * dt;
            let k1 = lindblad_rhs(hz_at(tau), hx, &chans, &rho);
            let mut r2 = rho;
            for i in 0..4 {
                r2[i] += 0.5 * dt * k1[i];
            }
            let k2 = lindblad_rhs(hz_at(tau + 0.5 * dt), hx, &chans, &r2);
            let mut r3 = rho;
            for i in 0..4 {
                r3[i] += 0.5 * dt * k2[i];
            }
            let k3 = lindblad_rhs(hz_at(tau + 0.5 * dt), hx, &chans, &r3);
            let mut r4 = rho;
            for i in 0..4 {
                r4[i] += dt * k3[i];
            }
            let k4 = lindblad_rhs(hz_at(tau + dt), hx, &chans, &r4);
            for i in 0..4 {
                rho[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            update_validity(&rho, &mut validity);
            samples.push(sz_of(&rho));
        }

        if let Some(prev_samples) = &prev {
            let diff: f64 = prev_samples
                .iter()
                .zip(samples.iter())
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>()
                / samples.len() as f64;
            if diff < options.steady_tolerance {
                let times = (0..=steps).map(|j| j as f64 * dt).collect();
                return Ok(SteadyStateTrajectory {
                    times,
                    sz: samples,
                    steps_per_period: steps,
                    periods_elapsed: periods,
                    validity,
                });
            }
        }
        prev = Some(samples);
    }

    Err(Error::Convergence(format!(
        "no periodic steady state within {} periods (tolerance {:.1e})",
        options.max_periods, options.steady_tolerance
    )))
}

/// χ = ((ħ/δε)(ω_m/2π) ∫₀^{2π/ω_m} dt e^{iω_m t} ⟨s_z⟩)*, evaluated by
/// trapezoidal quadrature on the steady-state trajectory.
pub fn susceptibility_of(
    model: &TwoLevelReadoutModel,
    trajectory: &SteadyStateTrajectory,
) -> Result<C64> {
    if !(model.probe_amplitude > 0.0) {
        return Err(Error::invalid(
            "susceptibility requires a positive probe amplitude",
        ));
    }
    let c = PhysicalConstants::codata2018();
    let n = trajectory.steps_per_period;
    let dt = trajectory.times[1] - trajectory.times[0];
    let mut integral = C64::new(0.0, 0.0);
    for j in 0..=n {
        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
        let phase = C64::from_polar(1.0, model.probe_frequency * trajectory.times[j]);
        integral += w * phase * trajectory.sz[j] * dt;
    }
    let chi = (c.hbar / model.probe_amplitude) * (model.probe_frequency / TAU) * integral;
    Ok(chi.conj())
}

/// Steady state plus harmonic extraction in one call.
pub fn susceptibility(model: &TwoLevelReadoutModel, options: &SolverOptions) -> Result<C64> {
    let trajectory = steady_state_sz(model, options)?;
    susceptibility_of(model, &trajectory)
}

/// Parameters of the rotated (dressed) Pauli frame.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RotatedFrame {
    /// Gap ν = √(ε² + 4t²) (J).
    pub gap: f64,
    /// Mixing angle θ = arctan(ε/2t) (rad).
    pub angle: f64,
    /// Effective coupling g_eff = −(t/ν) g_c (rad/s).
    pub g_eff: f64,
}

impl RotatedFrame {
    /// Qubit-probe detuning Δ = ν/ħ − ω_m (rad/s).
    pub fn qubit_probe_detuning(&self, constants: &PhysicalConstants, omega_m: f64) -> f64 {
        self.gap / constants.hbar - omega_m
    }
}

/// Resonator-probe detuning Δ₀ = ω_r − ω_m (rad/s).
pub fn resonator_probe_detuning(omega_r: f64, omega_m: f64) -> f64 {
    omega_r - omega_m
}

/// Transform (ε, t, g_c) to the rotated Pauli basis.
pub fn rotate_basis(epsilon: f64, t: f64, g_c: f64) -> Result<RotatedFrame> {
    if epsilon == 0.0 && t == 0.0 {
        return Err(Error::invalid(
            "rotation angle undefined for epsilon = t = 0",
        ));
    }
    let gap = (epsilon * epsilon + 4.0 * t * t).sqrt();
    let angle = f64::atan2(epsilon, 2.0 * t);
    let g_eff = -(t / gap) * g_c;
    Ok(RotatedFrame { gap, angle, g_eff })
}

/// Transmission coefficient t_c = iκ / (Δ₀ + g_c²χ − iκ/2).
///
/// Evaluated verbatim; at bare resonance (χ = 0, Δ₀ = 0) this gives
/// t_c = −2, i.e. |t_c| > 1 — κ here counts the loss through both ports and
/// no per-port renormalization is applied.
pub fn transmission(chi: C64, g_c: f64, delta0: f64, kappa: f64) -> Result<C64> {
    if !(kappa > 0.0) {
        return Err(Error::invalid(format!(
            "photon loss rate must be positive, got {kappa}"
        )));
    }
    let denominator = C64::new(delta0, -kappa / 2.0) + g_c * g_c * chi;
    if denominator.norm() < 1e-12 * kappa {
        return Err(Error::Singularity(
            "transmission denominator vanished".into(),
        ));
    }
    Ok(C64::new(0.0, kappa) / denominator)
}

/// Full set of readout observables at one operating point.
#[derive(Debug, Clone, Copy)]
pub struct ReadoutResponse {
    /// Susceptibility χ (s).
    pub chi: C64,
    /// Transmission with the Rydberg transition present.
    pub t_c: C64,
    /// Transmission with the transition absent (χ = 0).
    pub t_c_reference: C64,
    /// Contrast Δt_c = t_c(χ) − t_c(0).
    pub delta_t_c: C64,
    /// Quantum capacitance change ΔC = (αe)² Re χ / ħ (F).
    pub delta_capacitance: f64,
    /// SNR = |Δt_c|² (n̄/n_noise)(κ/2π) t_int.
    pub snr: f64,
    /// Capacitance sensitivity S_c = (ΔC/|Δt_c|)√((n_noise/n̄)(2π/κ))
    /// (F/√Hz); +∞ when the contrast vanishes.
    pub sensitivity: f64,
    /// Charge-photon coupling used (rad/s).
    pub g_c: f64,
    /// Resonator-probe detuning Δ₀ (rad/s).
    pub delta0: f64,
    pub n_bar: f64,
    pub n_noise: f64,
    pub t_int: f64,
}

/// Evaluate χ and every resonator observable for a model probed through the
/// given resonator with n̄ photons, n_noise photon noise and integration
/// time t_int.
pub fn readout_figures(
    constants: &PhysicalConstants,
    model: &TwoLevelReadoutModel,
    resonator: &ResonatorElectrical,
    n_bar: f64,
    n_noise: f64,
    t_int: f64,
    options: &SolverOptions,
) -> Result<ReadoutResponse> {
    resonator.validate()?;
    if !(n_bar > 0.0 && n_noise > 0.0 && t_int > 0.0) {
        return Err(Error::invalid(format!(
            "photon numbers and integration time must be positive \
             (n_bar = {n_bar}, n_noise = {n_noise}, t_int = {t_int})"
        )));
    }
    let chi = susceptibility(model, options)?;
    let g_c = resonator.charge_photon_g(constants);
    let delta0 = resonator_probe_detuning(resonator.omega_r, model.probe_frequency);
    let t_c = transmission(chi, g_c, delta0, resonator.kappa)?;
    let t_c_reference = transmission(C64::new(0.0, 0.0), g_c, delta0, resonator.kappa)?;
    let delta_t_c = t_c - t_c_reference;
    let alpha_e = resonator.lever_arm * constants.elementary_charge;
    let delta_capacitance = alpha_e * alpha_e * chi.re / constants.hbar;
    let snr = delta_t_c.norm_sqr() * (n_bar / n_noise) * (resonator.kappa / TAU) * t_int;
    let sensitivity = if delta_t_c.norm() > 0.0 {
        delta_capacitance / delta_t_c.norm() * ((n_noise / n_bar) * (TAU / resonator.kappa)).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(ReadoutResponse {
        chi,
        t_c,
        t_c_reference,
        delta_t_c,
        delta_capacitance,
        snr,
        sensitivity,
        g_c,
        delta0,
        n_bar,
        n_noise,
        t_int,
    })
}
