//! Acceptance suite: every criterion the toolkit is signed off against, one
//! test per criterion, each printing a PASS/FAIL line with the measured
//! numbers (run with `--nocapture` to see the lines for passing tests).
//!
//! Three assertions are expected to fail and are kept failing on purpose;
//! they encode published reference figures that the documented potential
//! model and grid do not actually reproduce:
//!
//! - criterion 1: the 10.6 nm helium ground-state height corresponds to a
//!   zero image-plane offset, not the cataloged z₀ = 0.1 nm (which gives
//!   11.28 nm);
//! - criterion 2: the 2.5 nm neon height corresponds to z₀ = 0.1 nm, not
//!   the cataloged 0.23 nm (which gives 2.99 nm);
//! - criterion 11 (convergence clauses): the finite-barrier step introduces
//!   sub-step length scales (0.1–0.23 nm offsets, ~0.2 nm barrier
//!   penetration), so the observed refinement order over 0.4→0.05 nm steps
//!   is ~0.2–0.6 rather than the asymptotic 2, and halving the step moves
//!   f₁₂ by ~1.3%.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use num_complex::Complex64 as C64;

use feq_core::constants::{PhysicalConstants, JOULE_PER_EV, NANOMETRE};
use feq_core::couplings::{
    charge_photon_g, dqd_spin_photon, spin_decoherence_from_charge, vacuum_voltage,
    ResonatorElectrical,
};
use feq_core::materials::SubstrateParams;
use feq_core::readout::{
    readout_figures, rotate_basis, steady_state_sz, susceptibility, susceptibility_of,
    transmission, RelaxationBasis, SolverOptions, TwoLevelReadoutModel,
};
use feq_core::schrodinger1d::{
    escape_threshold, escape_window, hellmann_feynman_residual, solve_for, Grid1D,
};

fn c() -> PhysicalConstants {
    PhysicalConstants::codata2018()
}

fn report(id: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {id}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "ACCEPTANCE {id} FAIL — {detail}");
}

#[test]
fn acceptance_01_helium_ground_state_height() {
    let spectrum = solve_for(&c(), &SubstrateParams::helium4(), &Grid1D::default(), 0.0, 2)
        .unwrap();
    let z1 = spectrum.mean_position(1) / NANOMETRE;
    let pass = (z1 - 10.6).abs() / 10.6 <= 0.03;
    report(
        "01 helium ground-state height",
        pass,
        &format!(
            "computed <z>_1 = {z1:.3} nm vs reference 10.6 nm ± 3%; the reference height \
             is only reproduced with a zero image-plane offset, while the catalog uses \
             z0 = 0.1 nm"
        ),
    );
}

#[test]
fn acceptance_02_neon_ground_state_height() {
    let spectrum =
        solve_for(&c(), &SubstrateParams::neon(), &Grid1D::default(), 0.0, 2).unwrap();
    let z1 = spectrum.mean_position(1) / NANOMETRE;
    let pass = (z1 - 2.5).abs() / 2.5 <= 0.05;
    report(
        "02 neon ground-state height",
        pass,
        &format!(
            "computed <z>_1 = {z1:.3} nm vs reference 2.5 nm ± 5%; the reference height \
             is only reproduced with z0 = 0.1 nm, while the catalog uses z0 = 0.23 nm"
        ),
    );
}

#[test]
fn acceptance_03_helium_rydberg_transition() {
    let cst = c();
    let he = SubstrateParams::helium4();
    let grid = Grid1D::default();
    let f12 = solve_for(&cst, &he, &grid, 0.0, 2)
        .unwrap()
        .transition_frequency(&cst, 1, 2)
        / 1e9;
    let in_band = (115.0..=132.0).contains(&f12);

    let fields: Vec<f64> = (0..=5).map(|i| i as f64 * 4e3).collect();
    let mut f12s = Vec::new();
    for &e in &fields {
        f12s.push(
            solve_for(&cst, &he, &grid, e, 2)
                .unwrap()
                .transition_frequency(&cst, 1, 2),
        );
    }
    let increasing = f12s.windows(2).all(|w| w[1] > w[0]);
    report(
        "03 helium Rydberg transition",
        in_band && increasing,
        &format!(
            "f12(E_perp = 0) = {f12:.2} GHz (band [115, 132]), strictly increasing over \
             0..20 kV/m: {increasing}"
        ),
    );
}

#[test]
fn acceptance_04_analytic_hydrogenic_limit() {
    let cst = c();
    let he = SubstrateParams::helium4();
    // Huge barrier, no offset; n = 2 extends to ~47 nm so the tail needs a
    // 200 nm domain.
    let ideal = SubstrateParams::custom(he.epsilon_r, 1e3 * JOULE_PER_EV, 0.0, None).unwrap();
    let grid = Grid1D::new(-20.0 * NANOMETRE, 200.0 * NANOMETRE, 0.1 * NANOMETRE).unwrap();
    let spectrum = solve_for(&cst, &ideal, &grid, 0.0, 2).unwrap();

    let quarter = he.image_factor / 4.0;
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=2usize {
        let analytic = -cst.planck * cst.rydberg_frequency * quarter * quarter
            / (n as f64 * n as f64);
        let got = spectrum.energy(n);
        let rel = (got - analytic).abs() / analytic.abs();
        ok &= rel < 0.01;
        detail.push_str(&format!("E{n} rel err {rel:.2e}; "));
    }
    let e1_ghz = spectrum.energy(1) / cst.planck / 1e9;
    let f12_ghz = spectrum.transition_frequency(&cst, 1, 2) / 1e9;
    ok &= (e1_ghz + 152.6).abs() / 152.6 < 0.01;
    ok &= (f12_ghz - 114.4).abs() / 114.4 < 0.01;
    detail.push_str(&format!("E1 = {e1_ghz:.2} GHz (ref -152.6), f12 = {f12_ghz:.2} GHz (ref 114.4)"));
    report("04 analytic hydrogenic limit", ok, &detail);
}

#[test]
fn acceptance_05_hellmann_feynman() {
    let cst = c();
    let grid = Grid1D::default();
    let mut ok = true;
    let mut detail = String::new();
    for substrate in [SubstrateParams::helium4(), SubstrateParams::neon()] {
        for n in 1..=2usize {
            let r = hellmann_feynman_residual(&cst, &substrate, &grid, 5e3, n).unwrap();
            ok &= r < 1e-3;
            detail.push_str(&format!("{} n={n}: {r:.2e}; ", substrate.name));
        }
    }
    report("05 Hellmann-Feynman residual < 1e-3", ok, &detail);
}

#[test]
fn acceptance_06_vacuum_voltage_and_charge_photon_coupling() {
    let cst = c();
    let v = vacuum_voltage(&cst, 2e-12, TAU * 100e6).unwrap();
    let v_nv = v * 1e9;
    let g = charge_photon_g(&cst, 0.01, v).unwrap() / TAU / 1e6;
    let ok = (v_nv - 130.0).abs() <= 2.0 && (g - 0.31).abs() <= 0.02;
    report(
        "06 vacuum voltage and charge-photon coupling",
        ok,
        &format!("v_rms = {v_nv:.2} nV (130 ± 2), g_c/2pi = {g:.4} MHz (0.31 ± 0.02)"),
    );
}

#[test]
fn acceptance_07_spin_photon_figures() {
    let cst = c();
    let run = |dso_hz: f64| {
        dqd_spin_photon(&cst, 1e5, TAU * 3.5e6, 100e-9, cst.planck * dso_hz)
            .unwrap()
            .g_s
            / TAU
            / 1e6
    };
    let gs1 = run(1e9);
    let gs2 = run(100e6);
    // Independent arithmetic oracle, evaluated from scratch.
    let oracle = |dso_hz: f64| {
        let hbar = 1.054571817e-34;
        let b_sp = 1e5 * hbar * (TAU * 3.5e6) * 100e-9 / (4.0 * 6.62607015e-34 * dso_hz);
        2.00231930436256 * 9.2740100783e-24 * b_sp / hbar / TAU / 1e6
    };
    let ok = (gs1 - 0.2).abs() / 0.2 <= 0.30
        && (gs2 - 2.0).abs() / 2.0 <= 0.30
        && (gs1 - oracle(1e9)).abs() / oracle(1e9) <= 0.01
        && (gs2 - oracle(100e6)).abs() / oracle(100e6) <= 0.01;
    report(
        "07 spin-photon figures",
        ok,
        &format!(
            "g_s/2pi = {gs1:.4} MHz (quote 0.2 ± 30%, oracle {:.4} ± 1%) and {gs2:.3} MHz \
             (quote 2 ± 30%, oracle {:.3} ± 1%)",
            oracle(1e9),
            oracle(100e6)
        ),
    );
}

#[test]
fn acceptance_08_charge_induced_spin_decoherence() {
    let cst = c();
    let r = spin_decoherence_from_charge(&cst, 1e5, 100e-9, cst.planck * 1e9, TAU * 0.36e6)
        .unwrap();
    let khz = r.rate / TAU / 1e3;
    let ok = (khz - 7.0).abs() / 7.0 <= 0.10;
    report(
        "08 charge-induced spin decoherence",
        ok,
        &format!("rate/2pi = {khz:.3} kHz vs 7 kHz ± 10% (mixing {:.3})", r.mixing),
    );
}

#[test]
fn acceptance_09_readout_property_suite() {
    let cst = c();
    let opts = SolverOptions::default();
    let mut ok = true;
    let mut detail = String::new();

    let base = |basis| TwoLevelReadoutModel {
        epsilon: 0.0,
        drive: cst.planck * 0.5e9,
        probe_amplitude: cst.planck * 10e6,
        probe_frequency: TAU * 100e6,
        gamma1: TAU * 1e6,
        gamma_phi: TAU * 0.1e6,
        relaxation_basis: basis,
    };

    // Density-matrix validity bounds over a generic driven run.
    let traj = steady_state_sz(&base(RelaxationBasis::Bare), &opts).unwrap();
    let v = traj.validity;
    let dm_ok = v.max_trace_error < 1e-9
        && v.max_hermiticity_error < 1e-9
        && v.min_eigenvalue > -1e-9
        && v.max_eigenvalue < 1.0 + 1e-9;
    ok &= dm_ok;
    detail.push_str(&format!(
        "density matrix: trace err {:.1e}, herm err {:.1e}, eigs [{:.1e}, {:.6}]; ",
        v.max_trace_error, v.max_hermiticity_error, v.min_eigenvalue, v.max_eigenvalue
    ));

    // chi(t = 0) = 0 to quadrature tolerance.
    let undriven = TwoLevelReadoutModel {
        drive: 0.0,
        epsilon: cst.planck * 0.5e9,
        ..base(RelaxationBasis::Bare)
    };
    let chi0 = susceptibility(&undriven, &opts).unwrap();
    let chi0_ok = chi0.norm() <= 1e-10 * cst.hbar / undriven.probe_amplitude;
    ok &= chi0_ok;
    detail.push_str(&format!("chi(t=0) = {:.2e}; ", chi0.norm()));

    // Linear response: halving the probe amplitude moves chi < 1%.
    let m_full = base(RelaxationBasis::Dressed);
    let chi_full = susceptibility(&m_full, &opts).unwrap();
    let m_half = TwoLevelReadoutModel {
        probe_amplitude: m_full.probe_amplitude / 2.0,
        ..m_full
    };
    let chi_half = susceptibility(&m_half, &opts).unwrap();
    let lin = (chi_full - chi_half).norm() / chi_full.norm();
    ok &= lin < 0.01;
    detail.push_str(&format!("linear response {lin:.2e}; "));

    // Adiabatic quantum-capacitance oracle (slow weak probe, dressed).
    let adiabatic = TwoLevelReadoutModel {
        probe_frequency: TAU * 5e6,
        probe_amplitude: cst.planck * 5e6,
        gamma1: TAU * 50e6,
        gamma_phi: 0.0,
        ..base(RelaxationBasis::Dressed)
    };
    let chi_ad = susceptibility(&adiabatic, &opts).unwrap();
    let nu = adiabatic.gap();
    let oracle = -2.0 * cst.hbar * adiabatic.drive * adiabatic.drive / (nu * nu * nu);
    let ad_rel = (chi_ad.re - oracle).abs() / oracle.abs();
    ok &= ad_rel < 0.05;
    detail.push_str(&format!("adiabatic oracle rel {ad_rel:.2e}; "));

    // Transmission peak location at -g_c^2 Re chi within one scan step.
    let g_c = TAU * 0.31e6;
    let kappa = TAU * 0.4e6;
    let chi = C64::new(-8e-8, -2e-8);
    let predicted = -g_c * g_c * chi.re;
    let step = 1e-3 * kappa;
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut delta0 = predicted - 1500.0 * step;
    while delta0 <= predicted + 1500.0 * step {
        let t = transmission(chi, g_c, delta0, kappa).unwrap();
        if t.norm() > best.0 {
            best = (t.norm(), delta0);
        }
        delta0 += step;
    }
    let peak_ok = (best.1 - predicted).abs() <= step;
    ok &= peak_ok;
    detail.push_str(&format!(
        "transmission peak offset {:.2e} of step; ",
        (best.1 - predicted).abs() / step
    ));

    // SNR ∝ t_int and the sensitivity identity to 1e-12.
    let resonator = ResonatorElectrical::new(2e-12, TAU * 100e6, 0.01, kappa).unwrap();
    let model = base(RelaxationBasis::Dressed);
    let r1 = readout_figures(&cst, &model, &resonator, 100.0, 1.0, 1e-6, &opts).unwrap();
    let r4 = readout_figures(&cst, &model, &resonator, 100.0, 1.0, 4e-6, &opts).unwrap();
    let snr_lin = (r4.snr / r1.snr - 4.0).abs() < 1e-9;
    let identity_lhs = r1.sensitivity * r1.snr.sqrt();
    let identity_rhs = r1.delta_capacitance * r1.t_int.sqrt();
    let identity_ok = (identity_lhs - identity_rhs).abs() <= 1e-12 * identity_rhs.abs();
    ok &= snr_lin && identity_ok;
    detail.push_str(&format!(
        "SNR(4t)/SNR(t) = {:.9}, S_c sqrt(SNR) identity rel {:.2e}",
        r4.snr / r1.snr,
        (identity_lhs - identity_rhs).abs() / identity_rhs.abs()
    ));

    report("09 readout property suite", ok, &detail);
}

#[test]
fn acceptance_10_escape_window() {
    let cst = c();
    let he = SubstrateParams::helium4();
    let grid = Grid1D::default();
    let window = escape_window(&cst, &he, &grid, 1, 2, (-1e6, -1e2)).unwrap();
    let Some(window) = window else {
        report("10 escape window", false, "no window found in [-1e6, -1e2] V/m");
        return;
    };

    let spectrum = solve_for(&cst, &he, &grid, 0.0, 2).unwrap();
    let t2 = escape_threshold(&cst, &spectrum, 2, 1e2, 1e6).unwrap();
    let t1 = escape_threshold(&cst, &spectrum, 1, 1e2, 1e6);

    // Inside the window state 2 is escaped and state 1 bound; the escaped
    // classification is monotone in |E_perp| by construction of the
    // first-crossing threshold, verified here by a scan.
    let mut inside_ok = true;
    for i in 0..100 {
        let f = -window.e_high + (-window.e_low + window.e_high) * i as f64 / 99.0;
        inside_ok &= f >= t2;
        if let Some(t1) = t1 {
            inside_ok &= f < t1 * (1.0 + 1e-9);
        }
    }
    let mut monotone = true;
    let mut escaped_seen = false;
    for i in 0..=400 {
        let f = 1e2 * (1e4f64).powf(i as f64 / 400.0);
        let escaped = f >= t2;
        if escaped_seen && !escaped {
            monotone = false;
        }
        escaped_seen |= escaped;
    }
    report(
        "10 escape window",
        inside_ok && monotone,
        &format!(
            "window E_perp in [{:.3e}, {:.3e}] V/m, state-2 threshold {:.3e} V/m, \
             state-1 threshold {} V/m, monotone {monotone}",
            window.e_low,
            window.e_high,
            -t2,
            t1.map(|t| format!("{:.3e}", -t)).unwrap_or_else(|| "beyond range".into()),
        ),
    );
}

#[test]
fn acceptance_11_numerics_grid_convergence() {
    let cst = c();
    let he = SubstrateParams::helium4();
    let f12_at = |h_nm: f64| {
        let grid = Grid1D::new(-20.0 * NANOMETRE, 100.0 * NANOMETRE, h_nm * NANOMETRE).unwrap();
        solve_for(&cst, &he, &grid, 0.0, 2)
            .unwrap()
            .transition_frequency(&cst, 1, 2)
    };
    let f = [f12_at(0.4), f12_at(0.2), f12_at(0.1), f12_at(0.05)];
    let order_coarse = ((f[0] - f[1]) / (f[1] - f[2])).log2();
    let order_fine = ((f[1] - f[2]) / (f[2] - f[3])).log2();
    let halving = ((f[3] - f[2]) / f[2]).abs();
    let order_ok = (1.8..=2.2).contains(&order_coarse) || (1.8..=2.2).contains(&order_fine);
    let halving_ok = halving < 1e-3;
    report(
        "11 numerics hygiene (grid convergence)",
        order_ok && halving_ok,
        &format!(
            "observed orders {order_coarse:.2} and {order_fine:.2} vs required [1.8, 2.2]; \
             f12 halving change {halving:.2e} vs required < 1e-3. The finite-barrier step \
             and the 0.1 nm image-plane offset put length scales below the step sizes, so \
             the asymptotic second-order regime is not reached on this step series"
        ),
    );
}

fn run_feq(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_feq"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn acceptance_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("feq-acceptance-{name}"));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn acceptance_11_numerics_determinism() {
    let dir = acceptance_dir("determinism");
    let out1 = run_feq(&dir, &["spectrum", "--out", "a.csv"]);
    let out2 = run_feq(&dir, &["spectrum", "--out", "b.csv"]);
    assert!(out1.status.success() && out2.status.success());
    let a = fs::read(dir.join("a.csv")).unwrap();
    let b = fs::read(dir.join("b.csv")).unwrap();
    let identical = a == b;
    report(
        "11 numerics hygiene (deterministic reruns)",
        identical,
        "identical invocations produce byte-identical tables",
    );
}

#[test]
fn acceptance_11_numerics_serial_parallel_equality() {
    let dir = acceptance_dir("threads");
    let s = run_feq(&dir, &["stark-sweep", "--eperp", "0:2e4:11", "--threads", "1", "--out", "s.csv"]);
    let p = run_feq(&dir, &["stark-sweep", "--eperp", "0:2e4:11", "--threads", "8", "--out", "p.csv"]);
    assert!(s.status.success() && p.status.success());
    let strip = |path: PathBuf| {
        fs::read_to_string(path)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("# threads:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let equal = strip(dir.join("s.csv")) == strip(dir.join("p.csv"));
    report(
        "11 numerics hygiene (serial/parallel sweep equality)",
        equal,
        "1-thread and 8-thread sweeps emit identical tables",
    );
}
