//! Vertical Schrödinger problem for an electron floating above a cryogenic
//! substrate.
//!
//! The electron sees its attractive image charge through the surface and a
//! hard chemical barrier at the surface itself:
//!
//! ```text
//! V(z) = U_b                                   for z <= 0
//! V(z) = -(e²/4πε₀)(Λ/4)/(z + z₀) + e z E⊥     for z > 0
//! ```
//!
//! The bound "Rydberg" ladder of this potential is solved by second-order
//! central finite differences on a uniform grid with ψ = 0 at both grid ends,
//! reduced to a symmetric tridiagonal eigenproblem. On top of the solver the
//! module provides Stark sweeps, a Hellmann-Feynman consistency check, the
//! spectroscopic calibration of z₀, and the pulling-field escape window used
//! for ionization readout.

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, NANOMETRE};
use crate::error::{Error, Result};
use crate::materials::SubstrateParams;
use crate::tridiag;

/// Uniform 1D grid. Defaults to z ∈ [−20 nm, 100 nm] with 0.1 nm steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    /// Lower edge (m), inside the substrate (must be negative).
    pub z_min: f64,
    /// Upper edge (m), in the vacuum (must be positive).
    pub z_max: f64,
    /// Step h_z (m).
    pub step: f64,
}

impl Default for Grid1D {
    fn default() -> Self {
        Grid1D {
            z_min: -20.0 * NANOMETRE,
            z_max: 100.0 * NANOMETRE,
            step: 0.1 * NANOMETRE,
        }
    }
}

impl Grid1D {
    pub fn new(z_min: f64, z_max: f64, step: f64) -> Result<Self> {
        let grid = Grid1D { z_min, z_max, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_min < 0.0 && self.z_max > 0.0) {
            return Err(Error::invalid(format!(
                "grid must straddle the surface: z_min {} m, z_max {} m",
                self.z_min, self.z_max
            )));
        }
        if !(self.step > 0.0) {
            return Err(Error::invalid(format!(
                "grid step must be positive, got {} m",
                self.step
            )));
        }
        if self.len() < 100 {
            return Err(Error::invalid(format!(
                "grid must have at least 100 points, got {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// Number of grid points N = round((z_max − z_min)/h_z) + 1.
    pub fn len(&self) -> usize {
        ((self.z_max - self.z_min) / self.step).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of point `i`, with values within one part in 10⁹ of a step
    /// snapped to exactly zero so the surface point is classified as barrier
    /// regardless of rounding in `z_min + i·h`.
    pub fn z(&self, i: usize) -> f64 {
        let z = self.z_min + i as f64 * self.step;
        if z.abs() < 1e-9 * self.step {
            0.0
        } else {
            z
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.z(i)).collect()
    }
}

/// The sampled piecewise potential for one substrate and pressing field.
#[derive(Debug, Clone)]
pub struct PotentialSpec {
    pub substrate: SubstrateParams,
    /// Perpendicular field E⊥ (V/m); positive presses the electron toward
    /// the surface, negative pulls it away.
    pub e_perp: f64,
    pub grid: Grid1D,
    /// V(z_i) (J), one value per grid point.
    pub values: Vec<f64>,
}

/// Largest |E⊥| accepted (V/m); far beyond any realistic holding field.
pub const MAX_E_PERP: f64 = 1e7;

/// Sample the surface potential with the Stark term on the grid.
pub fn build_potential(
    constants: &PhysicalConstants,
    substrate: &SubstrateParams,
    e_perp: f64,
    grid: &Grid1D,
) -> Result<PotentialSpec> {
    grid.validate()?;
    substrate.validate()?;
    if !e_perp.is_finite() || e_perp.abs() >= MAX_E_PERP {
        return Err(Error::invalid(format!(
            "|E_perp| must be below {MAX_E_PERP:.0e} V/m, got {e_perp} V/m"
        )));
    }
    // Image attraction strength A = (e²/4πε₀)(Λ/4), so V_image = −A/(z+z₀).
    let attraction = constants.coulomb_prefactor() * substrate.image_factor / 4.0;
    let e = constants.elementary_charge;
    let values = (0..grid.len())
        .map(|i| {
            let z = grid.z(i);
            if z <= 0.0 {
                substrate.barrier_height
            } else {
                -attraction / (z + substrate.offset_z0) + e * z * e_perp
            }
        })
        .collect();
    Ok(PotentialSpec {
        substrate: *substrate,
        e_perp,
        grid: *grid,
        values,
    })
}

/// Eigenpairs of the vertical problem. States are indexed by the quantum
/// number n = 1, 2, … (n = 1 is the Rydberg ground state).
#[derive(Debug, Clone)]
pub struct RydbergSpectrum {
    pub substrate: SubstrateParams,
    pub e_perp: f64,
    pub grid: Grid1D,
    /// Eigenenergies E_n (J), ascending.
    pub energies: Vec<f64>,
    /// ψ_n sampled on the full grid (1/√m normalization: Σ|ψ|²h_z = 1).
    pub wavefunctions: Vec<Vec<f64>>,
    /// ⟨z⟩_n (m).
    pub mean_z: Vec<f64>,
    /// z_mn = ⟨m|z|n⟩ (m), k×k symmetric.
    pub z_elements: Vec<Vec<f64>>,
}

impl RydbergSpectrum {
    pub fn levels(&self) -> usize {
        self.energies.len()
    }

    /// E_n (J), 1-based.
    pub fn energy(&self, n: usize) -> f64 {
        self.energies[n - 1]
    }

    /// ⟨z⟩_n (m), 1-based.
    pub fn mean_position(&self, n: usize) -> f64 {
        self.mean_z[n - 1]
    }

    /// z_mn (m), 1-based.
    pub fn z_element(&self, m: usize, n: usize) -> f64 {
        self.z_elements[m - 1][n - 1]
    }

    /// f_mn = (E_n − E_m)/h (Hz), 1-based.
    pub fn transition_frequency(&self, constants: &PhysicalConstants, m: usize, n: usize) -> f64 {
        (self.energies[n - 1] - self.energies[m - 1]) / constants.planck
    }

    /// Rydberg dipole length d = ⟨z⟩₂ − ⟨z⟩₁ (m).
    pub fn dipole_length(&self) -> f64 {
        self.mean_z[1] - self.mean_z[0]
    }

    /// Probability carried by state n at z ≤ 0 (barrier leakage), 1-based.
    pub fn barrier_leakage(&self, n: usize) -> f64 {
        let psi = &self.wavefunctions[n - 1];
        (0..self.grid.len())
            .filter(|&i| self.grid.z(i) <= 0.0)
            .map(|i| psi[i] * psi[i] * self.grid.step)
            .sum()
    }
}

/// Solve for the `k` lowest eigenpairs of the sampled potential.
pub fn solve(
    constants: &PhysicalConstants,
    potential: &PotentialSpec,
    k: usize,
) -> Result<RydbergSpectrum> {
    let n_points = potential.grid.len();
    if potential.values.len() != n_points {
        return Err(Error::invalid(
            "potential sample count does not match grid".to_string(),
        ));
    }
    let interior = n_points - 2;
    if k < 2 {
        return Err(Error::invalid(format!(
            "at least two levels are required, got k = {k}"
        )));
    }
    if k > interior / 10 {
        return Err(Error::invalid(format!(
            "k = {k} too large for {interior} interior points (need k << N)"
        )));
    }

    let h = potential.grid.step;
    let kinetic = constants.hbar * constants.hbar
        / (2.0 * constants.electron_mass * h * h);
    // ψ = 0 at both grid ends: the eigenproblem runs over interior points.
    let diag: Vec<f64> = (1..n_points - 1)
        .map(|i| 2.0 * kinetic + potential.values[i])
        .collect();
    let off = vec![-kinetic; interior - 1];

    let pairs = tridiag::lowest_eigenpairs(&diag, &off, k)?;

    let inv_sqrt_h = 1.0 / h.sqrt();
    let mut wavefunctions = Vec::with_capacity(k);
    for vec in &pairs.vectors {
        let mut psi = vec![0.0; n_points];
        for (i, &v) in vec.iter().enumerate() {
            psi[i + 1] = v * inv_sqrt_h;
        }
        wavefunctions.push(psi);
    }

    let zs = potential.grid.points();
    let mean_z: Vec<f64> = wavefunctions
        .iter()
        .map(|psi| {
            psi.iter()
                .zip(zs.iter())
                .map(|(p, z)| p * p * z * h)
                .sum()
        })
        .collect();
    let mut z_elements = vec![vec![0.0; k]; k];
    for a in 0..k {
        for b in a..k {
            let val: f64 = wavefunctions[a]
                .iter()
                .zip(wavefunctions[b].iter())
                .zip(zs.iter())
                .map(|((pa, pb), z)| pa * pb * z * h)
                .sum();
            z_elements[a][b] = val;
            z_elements[b][a] = val;
        }
    }

    Ok(RydbergSpectrum {
        substrate: potential.substrate,
        e_perp: potential.e_perp,
        grid: potential.grid,
        energies: pairs.values,
        wavefunctions,
        mean_z,
        z_elements,
    })
}

/// Build the potential and solve in one step.
pub fn solve_for(
    constants: &PhysicalConstants,
    substrate: &SubstrateParams,
    grid: &Grid1D,
    e_perp: f64,
    k: usize,
) -> Result<RydbergSpectrum> {
    let potential = build_potential(constants, substrate, e_perp, grid)?;
    solve(constants, &potential, k)
}

/// One row of a Stark sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StarkPoint {
    /// E⊥ (V/m).
    pub e_perp: f64,
    /// f₁₂ (Hz).
    pub f12: f64,
    /// ⟨z⟩₁ (m).
    pub z1: f64,
    /// ⟨z⟩₂ (m).
    pub z2: f64,
    /// d = ⟨z⟩₂ − ⟨z⟩₁ (m).
    pub d: f64,
}

#[derive(Debug, Clone)]
pub struct StarkSweep {
    pub points: Vec<StarkPoint>,
    /// Sign of df₁₂/dE⊥ across the sweep: +1 monotone increasing,
    /// −1 monotone decreasing, 0 non-monotone or single point.
    pub f12_trend: i8,
}

impl StarkSweep {
    /// Wrap already-computed sweep points, deriving the trend metadata.
    pub fn from_points(points: Vec<StarkPoint>) -> Self {
        let increasing = points.windows(2).all(|w| w[1].f12 > w[0].f12);
        let decreasing = points.windows(2).all(|w| w[1].f12 < w[0].f12);
        let f12_trend = if points.len() < 2 {
            0
        } else if increasing {
            1
        } else if decreasing {
            -1
        } else {
            0
        };
        StarkSweep { points, f12_trend }
    }
}

/// Solve one Stark-sweep field point.
pub fn stark_point(
    constants: &PhysicalConstants,
    substrate: &SubstrateParams,
    grid: &Grid1D,
    e_perp: f64,
    k: usize,
) -> Result<StarkPoint> {
    let spectrum = solve_for(constants, substrate, grid, e_perp, k.max(2))
        .map_err(|err| Error::Eigensolver(format!("at E_perp = {e_perp} V/m: {err}")))?;
    Ok(StarkPoint {
        e_perp,
        f12: spectrum.transition_frequency(constants, 1, 2),
        z1: spectrum.mean_position(1),
        z2: spectrum.mean_position(2),
        d: spectrum.dipole_length(),
    })
}

/// Solve at every field point of `e_perp_list` (order preserved).
pub fn stark_sweep(
    constants: &PhysicalConstants,
    substrate: &SubstrateParams,
    grid: &Grid1D,
    e_perp_list: &[f64],
    k: usize,
) -> Result<StarkSweep> {
    if e_perp_list.is_empty() {
        return Err(Error::invalid("Stark sweep needs at least one field point"));
    }
    let points = e_perp_list
        .iter()
        .map(|&e_perp| stark_point(constants, substrate, grid, e_perp, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(StarkSweep::from_points(points))
}

/// Central-difference step for the Hellmann-Feynman derivative (V/m).
pub const HELLMANN_FEYNMAN_STEP: f64 = 100.0;

/// Relative mismatch |dE_n/dE⊥ − e⟨z⟩_n| / (e⟨z⟩_n), with the derivative
/// taken by a symmetric stencil of ±100 V/m around `e_perp`.
///
/// The theorem dE_n/dE⊥ = e⟨z⟩_n holds for the exact eigenstates of the
/// sampled Hamiltonian, so the residual measures solver and stencil error.
pub fn hellmann_feynman_residual(
    constants: &PhysicalConstants,
    substrate: &SubstrateParams,
    grid: &Grid1D,
    e_perp: f64,
    n: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("state index n is 1-based"));
    }
    let k = n.max(2);
    let step = HELLMANN_FEYNMAN_STEP;
    let center = solve_for(constants, substrate, grid, e_perp, k)?;
    let plus = solve_for(constants, substrate, grid, e_perp + step, k)?;
    let minus = solve_for(constants, substrate, grid, e_perp - step, k)?;
    let derivative = (plus.energy(n) - minus.energy(n)) / (2.0 * step);
    let dipole = constants.elementary_charge * center.mean_position(n);
    Ok((derivative - dipole).abs() / dipole)
}

/// Calibration target tolerance (Hz).
pub const CALIBRATION_TOLERANCE_HZ: f64 = 10e6;

/// Find the image-potential offset z₀ ∈ [0, 1 nm] that reproduces a measured
/// f₁₂ by bisection (f₁₂ decreases monotonically with z₀).
///
/// The target must lie within ±30% of f₁₂ at the substrate's current z₀ and
/// inside the range reachable over the bracket, otherwise a bracket failure
/// is reported.
pub fn calibrate_z0(
    constants: &PhysicalConstants,
    substrate_base: &SubstrateParams,
    grid: &Grid1D,
    target_f12: f64,
) -> Result<f64> {
    if !(target_f12 > 0.0) {
        return Err(Error::invalid(format!(
            "target f12 must be positive, got {target_f12} Hz"
        )));
    }
    let f12_at = |z0: f64| -> Result<f64> {
        let substrate = substrate_base.with_offset_z0(z0);
        let spectrum = solve_for(constants, &substrate, grid, 0.0, 2)?;
        Ok(spectrum.transition_frequency(constants, 1, 2))
    };

    let uncalibrated = f12_at(substrate_base.offset_z0)?;
    let rel = (target_f12 - uncalibrated).abs() / uncalibrated;
    if rel > 0.30 {
        return Err(Error::Bracket(format!(
            "target f12 = {:.3} GHz is {:.0}% away from the uncalibrated {:.3} GHz",
            target_f12 / 1e9,
            rel * 100.0,
            uncalibrated / 1e9
        )));
    }

    let mut lo = 0.0; // f12 largest here
    let mut hi = 1.0 * NANOMETRE; // f12 smallest here
    let f_lo = f12_at(lo)?;
    let f_hi = f12_at(hi)?;
    if target_f12 > f_lo || target_f12 < f_hi {
        return Err(Error::Bracket(format!(
            "target f12 = {:.3} GHz outside reachable range [{:.3}, {:.3}] GHz for z0 in [0, 1] nm",
            target_f12 / 1e9,
            f_hi / 1e9,
            f_lo / 1e9
        )));
    }

    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f12_at(mid)?;
        if (f_mid - target_f12).abs() < CALIBRATION_TOLERANCE_HZ {
            return Ok(mid);
        }
        if f_mid > target_f12 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    Err(Error::Convergence(format!(
        "z0 bisection did not reach {CALIBRATION_TOLERANCE_HZ:.0} Hz on the target"
    )))
}

/// Escape window in pulling field: both bounds are negative E⊥ values (V/m)
/// with `e_low <= e_high`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EscapeWindow {
    pub e_low: f64,
    pub e_high: f64,
}

/// Barrier-top escape margin (J) of state `n` (1-based) at pulling-field
/// magnitude `f_mag` > 0.
///
/// For E⊥ = −f the vacuum-side potential has a local maximum at
/// z* = √(A/(e f)) − z₀; the state is classified escaped when its
/// zero-field energy, Stark-shifted to first order by −e⟨z⟩_n f, exceeds
/// V(z*). Positive margin means escaped. If the field is strong enough that
/// no barrier maximum survives at z > 0 the margin is +∞.
pub fn escape_margin(
    constants: &PhysicalConstants,
    spectrum: &RydbergSpectrum,
    n: usize,
    f_mag: f64,
) -> f64 {
    let substrate = &spectrum.substrate;
    let attraction = constants.coulomb_prefactor() * substrate.image_factor / 4.0;
    let e = constants.elementary_charge;
    let z_star = (attraction / (e * f_mag)).sqrt() - substrate.offset_z0;
    if z_star <= 0.0 {
        return f64::INFINITY;
    }
    let barrier_top = -attraction / (z_star + substrate.offset_z0) - e * f_mag * z_star;
    let level = spectrum.energy(n) - e * spectrum.mean_position(n) * f_mag;
    level - barrier_top
}

/// Smallest pulling-field magnitude in `[f_lo, f_hi]` at which state `n`
/// first crosses into the escaped classification, or `None` if it stays
/// bound over the whole range.
///
/// Escape is defined by the first crossing: once a state has escaped at some
/// field magnitude it is classified escaped at every larger magnitude. The
/// raw first-order margin is not monotone far beyond threshold (the frozen
/// Stark shift eventually overtakes the barrier-top drop), which would be an
/// artifact of the perturbative classification, not physics.
pub fn escape_threshold(
    constants: &PhysicalConstants,
    spectrum: &RydbergSpectrum,
    n: usize,
    f_lo: f64,
    f_hi: f64,
) -> Option<f64> {
    debug_assert!(f_lo > 0.0 && f_hi > f_lo);
    if escape_margin(constants, spectrum, n, f_lo) >= 0.0 {
        return Some(f_lo);
    }
    // Geometric scan for the first sign change, then bisection.
    const SCAN: usize = 256;
    let log_lo = f_lo.ln();
    let log_hi = f_hi.ln();
    let mut prev_f = f_lo;
    for i in 1..=SCAN {
        let f = (log_lo + (log_hi - log_lo) * i as f64 / SCAN as f64).exp();
        if escape_margin(constants, spectrum, n, f) >= 0.0 {
            let mut lo = prev_f;
            let mut hi = f;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if escape_margin(constants, spectrum, n, mid) >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-12 * hi {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_f = f;
    }
    None
}

/// Sub-range of the pulling-field range where state `n_escape` is classified
/// escaped while state `n_bound` is still bound. `None` when empty.
pub fn escape_window(
    constants: &PhysicalConstants,
    substrate: &SubstrateParams,
    grid: &Grid1D,
    n_bound: usize,
    n_escape: usize,
    e_perp_range: (f64, f64),
) -> Result<Option<EscapeWindow>> {
    let (e_min, e_max) = e_perp_range;
    if !(e_min < e_max) {
        return Err(Error::invalid(format!(
            "escape range must be ordered, got [{e_min}, {e_max}]"
        )));
    }
    if !(e_max < 0.0) {
        return Err(Error::invalid(
            "escape range must be entirely negative (pulling field)",
        ));
    }
    if !(n_bound < n_escape) || n_bound == 0 {
        return Err(Error::invalid(format!(
            "need 1 <= n_bound < n_escape, got {n_bound}, {n_escape}"
        )));
    }

    let spectrum = solve_for(constants, substrate, grid, 0.0, n_escape.max(2))?;
    let f_lo = -e_max; // smallest magnitude
    let f_hi = -e_min; // largest magnitude

    let t_escape = match escape_threshold(constants, &spectrum, n_escape, f_lo, f_hi) {
        Some(t) => t,
        None => return Ok(None),
    };
    let t_bound = escape_threshold(constants, &spectrum, n_bound, f_lo, f_hi);

    let upper_mag = t_bound.unwrap_or(f_hi).min(f_hi);
    let lower_mag = t_escape.max(f_lo);
    if lower_mag >= upper_mag {
        return Ok(None);
    }
    Ok(Some(EscapeWindow {
        e_low: -upper_mag,
        e_high: -lower_mag,
    }))
}
