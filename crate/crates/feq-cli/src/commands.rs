//! Implementations of the `feq` subcommands.

use std::f64::consts::TAU;
use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use feq_core::config::sweep_values;
use feq_core::constants::{PhysicalConstants, JOULE_PER_EV, NANOMETRE};
use feq_core::couplings::evaluate_scenario;
use feq_core::materials::SubstrateParams;
use feq_core::readout::{readout_figures, transmission};
use feq_core::schrodinger1d::{
    self, build_potential, escape_margin, escape_threshold, hellmann_feynman_residual, solve,
    solve_for, stark_point, Grid1D, StarkSweep,
};
use feq_core::Error as CoreError;

use crate::table::{num, ResultTable};
use crate::Resolved;

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<u8, CliError>;

fn out_path(resolved: &Resolved, default_name: &str) -> PathBuf {
    resolved
        .out_override
        .clone()
        .or_else(|| resolved.config.output.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(default_name))
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Core(CoreError::Config(format!("worker pool: {e}"))))
}

/// Fig.-style display scaling for wavefunctions: the plotted curve is the
/// level energy in GHz plus 700 GHz per unit of the nm-normalized amplitude,
/// so (curve − E_n/h)/700 GHz recovers ψ·√nm.
const DISPLAY_GHZ_PER_AMPLITUDE: f64 = 700.0;

pub fn spectrum(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let section = &resolved.config.spectrum;
    let substrate = section.material.resolve(&resolved.config.materials)?;
    let grid = resolved.config.grid.to_grid()?;
    let potential = build_potential(&constants, &substrate, section.eperp_V_per_m, &grid)?;
    let spectrum = solve(&constants, &potential, section.levels)?;

    let echo = resolved.config.to_json();
    let mut table = ResultTable::new(&[
        "n",
        "energy_over_h_GHz",
        "mean_z_nm",
        "f_1n_GHz",
        "z_1n_nm",
        "barrier_leakage",
    ]);
    table.note("material", format!("{}", substrate.name));
    table.note("eperp_V_per_m", num(section.eperp_V_per_m));
    table.note(
        "f12_GHz",
        num(spectrum.transition_frequency(&constants, 1, 2) / 1e9),
    );
    table.note("d_nm", num(spectrum.dipole_length() / NANOMETRE));
    for n in 1..=spectrum.levels() {
        table.push(vec![
            n.to_string(),
            num(spectrum.energy(n) / constants.planck / 1e9),
            num(spectrum.mean_position(n) / NANOMETRE),
            num(spectrum.transition_frequency(&constants, 1, n) / 1e9),
            num(spectrum.z_element(1, n) / NANOMETRE),
            num(spectrum.barrier_leakage(n)),
        ]);
    }
    let path = out_path(resolved, "spectrum.csv");
    table.write_csv(&path, "spectrum", &echo)?;

    // Companion file: potential and display-normalized wavefunctions.
    let mut columns = vec!["z_nm".to_string(), "potential_over_h_GHz".to_string()];
    for n in 1..=spectrum.levels() {
        columns.push(format!("psi{n}_per_sqrt_nm"));
        columns.push(format!("psi{n}_display_GHz"));
    }
    let column_refs: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
    let mut wf = ResultTable::new(&column_refs);
    wf.note("display_scale_GHz", num(DISPLAY_GHZ_PER_AMPLITUDE));
    for i in 0..grid.len() {
        let mut row = vec![
            num(grid.z(i) / NANOMETRE),
            num(potential.values[i] / constants.planck / 1e9),
        ];
        for n in 1..=spectrum.levels() {
            let amp = spectrum.wavefunctions[n - 1][i] * NANOMETRE.sqrt();
            let offset = spectrum.energy(n) / constants.planck / 1e9;
            row.push(num(amp));
            row.push(num(offset + DISPLAY_GHZ_PER_AMPLITUDE * amp));
        }
        wf.push(row);
    }
    let wf_path = wavefunction_path(&path);
    wf.write_csv(&wf_path, "spectrum", &echo)?;

    println!(
        "wrote {} and {} ({} levels, f12 = {:.3} GHz, <z>_1 = {:.3} nm)",
        path.display(),
        wf_path.display(),
        spectrum.levels(),
        spectrum.transition_frequency(&constants, 1, 2) / 1e9,
        spectrum.mean_position(1) / NANOMETRE,
    );
    Ok(0)
}

fn wavefunction_path(base: &Path) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "spectrum".into());
    base.with_file_name(format!("{stem}_wavefunctions.csv"))
}

pub fn stark_sweep(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let section = &resolved.config.stark_sweep;
    let substrate = section.material.resolve(&resolved.config.materials)?;
    let grid = resolved.config.grid.to_grid()?;
    let fields = section.values()?;

    let points = pool(resolved.threads)?.install(|| {
        fields
            .par_iter()
            .map(|&e| stark_point(&constants, &substrate, &grid, e, section.levels))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let sweep = StarkSweep::from_points(points);

    let mut table = ResultTable::new(&["eperp_V_per_m", "f12_GHz", "z1_nm", "z2_nm", "d_nm"]);
    table.note("material", format!("{}", substrate.name));
    table.note("f12_trend", sweep.f12_trend.to_string());
    table.note("threads", resolved.threads.to_string());
    for p in &sweep.points {
        table.push(vec![
            num(p.e_perp),
            num(p.f12 / 1e9),
            num(p.z1 / NANOMETRE),
            num(p.z2 / NANOMETRE),
            num(p.d / NANOMETRE),
        ]);
    }
    let path = out_path(resolved, "stark_sweep.csv");
    table.write_csv(&path, "stark-sweep", &resolved.config.to_json())?;
    println!(
        "wrote {} ({} points, f12 trend {})",
        path.display(),
        sweep.points.len(),
        sweep.f12_trend
    );
    Ok(0)
}

pub fn couplings(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let scenario = resolved.config.couplings.to_scenario(&constants)?;
    let results = evaluate_scenario(&constants, &scenario)?;

    let mut table = ResultTable::new(&[
        "quantity",
        "value_SI",
        "unit_SI",
        "value_human",
        "unit_human",
        "formula",
    ]);
    for r in &results {
        let (hv, hu) = human_units(r.value, &r.unit);
        table.push(vec![
            r.quantity.clone(),
            num(r.value),
            r.unit.clone(),
            num(hv),
            hu.to_string(),
            r.formula.clone(),
        ]);
    }
    let path = out_path(resolved, "couplings.csv");
    table.write_csv(&path, "couplings", &resolved.config.to_json())?;
    println!("wrote {} ({} coupling figures)", path.display(), results.len());
    Ok(0)
}

fn human_units(value: f64, unit: &str) -> (f64, &'static str) {
    match unit {
        "rad/s" => (value / TAU / 1e6, "over_2pi_MHz"),
        "T" => (value * 1e3, "mT"),
        "m" => (value / NANOMETRE, "nm"),
        "V" => (value * 1e9, "nV"),
        _ => (value, "same"),
    }
}

pub fn readout(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let section = &resolved.config.readout;
    let model = section.to_model(&constants);
    let resonator = section.to_resonator()?;
    let options = section.to_options();

    let figures = readout_figures(
        &constants,
        &model,
        &resonator,
        section.n_bar,
        section.n_noise,
        section.t_int_us * 1e-6,
        &options,
    )?;

    let mut table = ResultTable::new(&[
        "delta0_over_2pi_MHz",
        "tc_abs",
        "tc_phase_rad",
        "tc_ref_abs",
        "dtc_abs",
    ]);
    table.note("chi_re_s", num(figures.chi.re));
    table.note("chi_im_s", num(figures.chi.im));
    table.note("g_c_over_2pi_MHz", num(figures.g_c / TAU / 1e6));
    table.note("operating_delta0_over_2pi_MHz", num(figures.delta0 / TAU / 1e6));
    table.note("delta_capacitance_F", num(figures.delta_capacitance));
    table.note("snr", num(figures.snr));
    table.note("sensitivity_F_per_sqrtHz", num(figures.sensitivity));
    table.note("n_bar", num(figures.n_bar));
    table.note("n_noise", num(figures.n_noise));
    table.note("t_int_s", num(figures.t_int));

    let half = section.delta0_scan_halfwidth_kappa * resonator.kappa;
    let scan = sweep_values(
        figures.delta0 - half,
        figures.delta0 + half,
        section.delta0_scan_points,
        feq_core::config::SweepScale::Linear,
    )?;
    for delta0 in scan {
        let t_c = transmission(figures.chi, figures.g_c, delta0, resonator.kappa)?;
        let t_ref = transmission(C64::new(0.0, 0.0), figures.g_c, delta0, resonator.kappa)?;
        table.push(vec![
            num(delta0 / TAU / 1e6),
            num(t_c.norm()),
            num(t_c.arg()),
            num(t_ref.norm()),
            num((t_c - t_ref).norm()),
        ]);
    }

    let path = out_path(resolved, "readout.csv");
    table.write_csv(&path, "readout", &resolved.config.to_json())?;
    println!(
        "wrote {} (chi = {:.3e}{:+.3e}i s, SNR = {:.3e}, S_c = {:.3e} F/sqrtHz)",
        path.display(),
        figures.chi.re,
        figures.chi.im,
        figures.snr,
        figures.sensitivity,
    );
    Ok(0)
}

pub fn escape_window(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let section = &resolved.config.escape;
    let substrate = section.material.resolve(&resolved.config.materials)?;
    let grid = resolved.config.grid.to_grid()?;

    let range = (section.eperp_min_V_per_m, section.eperp_max_V_per_m);
    let window = schrodinger1d::escape_window(
        &constants,
        &substrate,
        &grid,
        section.n_bound,
        section.n_escape,
        range,
    )?;

    let spectrum = solve_for(&constants, &substrate, &grid, 0.0, section.n_escape.max(2))?;
    let f_lo = -range.1;
    let f_hi = -range.0;
    let t_bound = escape_threshold(&constants, &spectrum, section.n_bound, f_lo, f_hi);
    let t_escape = escape_threshold(&constants, &spectrum, section.n_escape, f_lo, f_hi);

    let mut table = ResultTable::new(&[
        "eperp_V_per_m",
        "margin_bound_over_h_GHz",
        "margin_escape_over_h_GHz",
        "bound_state_escaped",
        "escape_state_escaped",
    ]);
    table.note("material", format!("{}", substrate.name));
    table.note("n_bound", section.n_bound.to_string());
    table.note("n_escape", section.n_escape.to_string());
    match &window {
        Some(w) => {
            table.note("window_e_low_V_per_m", num(w.e_low));
            table.note("window_e_high_V_per_m", num(w.e_high));
        }
        None => table.note("window", "none"),
    }
    if let Some(t) = t_bound {
        table.note("threshold_bound_V_per_m", num(-t));
    }
    if let Some(t) = t_escape {
        table.note("threshold_escape_V_per_m", num(-t));
    }

    let magnitudes = sweep_values(
        f_lo,
        f_hi,
        section.scan_points,
        feq_core::config::SweepScale::Log,
    )?;
    for f in magnitudes {
        let m_bound = escape_margin(&constants, &spectrum, section.n_bound, f);
        let m_escape = escape_margin(&constants, &spectrum, section.n_escape, f);
        let bound_escaped = t_bound.map(|t| f >= t).unwrap_or(false);
        let escape_escaped = t_escape.map(|t| f >= t).unwrap_or(false);
        table.push(vec![
            num(-f),
            num(m_bound / constants.planck / 1e9),
            num(m_escape / constants.planck / 1e9),
            (bound_escaped as u8).to_string(),
            (escape_escaped as u8).to_string(),
        ]);
    }

    let path = out_path(resolved, "escape_window.csv");
    table.write_csv(&path, "escape-window", &resolved.config.to_json())?;
    match window {
        Some(w) => println!(
            "wrote {} (window E_perp in [{:.4e}, {:.4e}] V/m)",
            path.display(),
            w.e_low,
            w.e_high
        ),
        None => println!("wrote {} (no escape window in range)", path.display()),
    }
    Ok(0)
}

pub fn convergence(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let section = &resolved.config.convergence;
    let substrate = section.material.resolve(&resolved.config.materials)?;

    let steps_nm = [0.4, 0.2, 0.1, 0.05];
    let z_max_nm = [100.0, 200.0];
    let mut cases = Vec::new();
    for &zm in &z_max_nm {
        for &h in &steps_nm {
            cases.push((h, zm));
        }
    }

    let rows = pool(resolved.threads)?.install(|| {
        cases
            .par_iter()
            .map(|&(h, zm)| -> Result<(f64, f64, f64, f64), CoreError> {
                let grid = Grid1D::new(-20.0 * NANOMETRE, zm * NANOMETRE, h * NANOMETRE)?;
                let s = solve_for(&constants, &substrate, &grid, 0.0, 2)?;
                Ok((
                    h,
                    zm,
                    s.energy(1) / constants.planck / 1e9,
                    s.transition_frequency(&constants, 1, 2) / 1e9,
                ))
            })
            .collect::<Result<Vec<_>, _>>()
    })?;

    let f12_at = |h: f64, zm: f64| {
        rows.iter()
            .find(|r| r.0 == h && r.1 == zm)
            .map(|r| r.3)
            .expect("case computed")
    };
    let e1_at = |h: f64, zm: f64| {
        rows.iter()
            .find(|r| r.0 == h && r.1 == zm)
            .map(|r| r.2)
            .expect("case computed")
    };

    // Richardson-style observed order from successive step triples at
    // z_max = 100 nm.
    let order_coarse = ((f12_at(0.4, 100.0) - f12_at(0.2, 100.0))
        / (f12_at(0.2, 100.0) - f12_at(0.1, 100.0)))
    .log2();
    let order_fine = ((f12_at(0.2, 100.0) - f12_at(0.1, 100.0))
        / (f12_at(0.1, 100.0) - f12_at(0.05, 100.0)))
    .log2();
    let halving_change =
        ((f12_at(0.05, 100.0) - f12_at(0.1, 100.0)) / f12_at(0.1, 100.0)).abs();
    let domain_change_e1 = ((e1_at(0.1, 200.0) - e1_at(0.1, 100.0)) / e1_at(0.1, 100.0)).abs();

    let mut table = ResultTable::new(&["step_nm", "z_max_nm", "E1_over_h_GHz", "f12_GHz"]);
    table.note("material", format!("{}", substrate.name));
    table.note("observed_order_04_02_01", num(order_coarse));
    table.note("observed_order_02_01_005", num(order_fine));
    table.note("f12_halving_change_rel", num(halving_change));
    table.note("E1_domain_change_rel", num(domain_change_e1));
    for (h, zm, e1, f12) in &rows {
        table.push(vec![num(*h), num(*zm), num(*e1), num(*f12)]);
    }

    let path = out_path(resolved, "convergence.csv");
    table.write_csv(&path, "convergence", &resolved.config.to_json())?;
    println!(
        "wrote {} (orders {:.2}/{:.2}, f12 halving change {:.3e}, E1 domain change {:.3e})",
        path.display(),
        order_coarse,
        order_fine,
        halving_change,
        domain_change_e1
    );
    Ok(0)
}

struct CheckRow {
    name: &'static str,
    computed: f64,
    reference: String,
    tolerance: &'static str,
    unit: &'static str,
    pass: bool,
}

pub fn reproduce_paper(resolved: &Resolved) -> CmdResult {
    let constants = PhysicalConstants::codata2018();
    let materials = &resolved.config.materials;
    let helium = feq_core::config::MaterialChoice::Helium.resolve(materials)?;
    let neon = feq_core::config::MaterialChoice::Neon.resolve(materials)?;
    let grid = resolved.config.grid.to_grid()?;

    let mut rows: Vec<CheckRow> = Vec::new();
    let within = |x: f64, reference: f64, rel: f64| (x - reference).abs() <= rel * reference.abs();

    // Rydberg state heights and transition band.
    let he = solve_for(&constants, &helium, &grid, 0.0, 3)?;
    let ne = solve_for(&constants, &neon, &grid, 0.0, 3)?;
    let he_z1 = he.mean_position(1) / NANOMETRE;
    rows.push(CheckRow {
        name: "helium_mean_z1",
        computed: he_z1,
        reference: "10.6".into(),
        tolerance: "3%",
        unit: "nm",
        pass: within(he_z1, 10.6, 0.03),
    });
    let ne_z1 = ne.mean_position(1) / NANOMETRE;
    rows.push(CheckRow {
        name: "neon_mean_z1",
        computed: ne_z1,
        reference: "2.5".into(),
        tolerance: "5%",
        unit: "nm",
        pass: within(ne_z1, 2.5, 0.05),
    });
    let he_f12 = he.transition_frequency(&constants, 1, 2) / 1e9;
    rows.push(CheckRow {
        name: "helium_f12_band",
        computed: he_f12,
        reference: "[115, 132]".into(),
        tolerance: "band",
        unit: "GHz",
        pass: (115.0..=132.0).contains(&he_f12),
    });
    let he_20k = solve_for(&constants, &helium, &grid, 20e3, 2)?;
    let stark_delta = he_20k.transition_frequency(&constants, 1, 2) / 1e9 - he_f12;
    rows.push(CheckRow {
        name: "helium_f12_stark_increase",
        computed: stark_delta,
        reference: "> 0".into(),
        tolerance: "sign",
        unit: "GHz",
        pass: stark_delta > 0.0,
    });

    // Analytic hydrogenic limit (huge barrier, no offset, deep domain for
    // the extended n = 2 state).
    let ideal = SubstrateParams::custom(helium.epsilon_r, 1e3 * JOULE_PER_EV, 0.0, None)?;
    let deep_grid = Grid1D::new(-20.0 * NANOMETRE, 200.0 * NANOMETRE, 0.1 * NANOMETRE)?;
    let hydro = solve_for(&constants, &ideal, &deep_grid, 0.0, 2)?;
    let quarter = helium.image_factor / 4.0;
    let e1_ref = -constants.rydberg_frequency * quarter * quarter / 1e9;
    let e1_got = hydro.energy(1) / constants.planck / 1e9;
    rows.push(CheckRow {
        name: "hydrogenic_E1",
        computed: e1_got,
        reference: format!("{e1_ref:.2}"),
        tolerance: "1%",
        unit: "GHz",
        pass: within(e1_got, e1_ref, 0.01),
    });
    let f12_ref = -e1_ref * 0.75;
    let f12_got = hydro.transition_frequency(&constants, 1, 2) / 1e9;
    rows.push(CheckRow {
        name: "hydrogenic_f12",
        computed: f12_got,
        reference: format!("{f12_ref:.2}"),
        tolerance: "1%",
        unit: "GHz",
        pass: within(f12_got, f12_ref, 0.01),
    });

    // Hellmann-Feynman residuals at 5 kV/m.
    for (label, substrate) in [("helium", &helium), ("neon", &neon)] {
        for n in 1..=2usize {
            let r = hellmann_feynman_residual(&constants, substrate, &grid, 5e3, n)?;
            rows.push(CheckRow {
                name: match (label, n) {
                    ("helium", 1) => "hellmann_feynman_helium_n1",
                    ("helium", 2) => "hellmann_feynman_helium_n2",
                    ("neon", 1) => "hellmann_feynman_neon_n1",
                    _ => "hellmann_feynman_neon_n2",
                },
                computed: r,
                reference: "< 1e-3".into(),
                tolerance: "bound",
                unit: "relative",
                pass: r < 1e-3,
            });
        }
    }

    // Resonator vacuum fluctuation and charge-photon coupling.
    let v_rms = feq_core::couplings::vacuum_voltage(&constants, 2e-12, TAU * 100e6)? * 1e9;
    rows.push(CheckRow {
        name: "vacuum_voltage",
        computed: v_rms,
        reference: "130".into(),
        tolerance: "±2 nV",
        unit: "nV",
        pass: (v_rms - 130.0).abs() <= 2.0,
    });
    let g_c = feq_core::couplings::charge_photon_g(&constants, 0.01, v_rms * 1e-9)? / TAU / 1e6;
    rows.push(CheckRow {
        name: "charge_photon_g",
        computed: g_c,
        reference: "0.31".into(),
        tolerance: "±0.02 MHz",
        unit: "MHz/2pi",
        pass: (g_c - 0.31).abs() <= 0.02,
    });

    // Double-dot spin-photon figures at the two quoted detunings.
    let dqd = |dso_hz: f64| -> Result<f64, CoreError> {
        let r = feq_core::couplings::dqd_spin_photon(
            &constants,
            1e5,
            TAU * 3.5e6,
            100e-9,
            constants.planck * dso_hz,
        )?;
        Ok(r.g_s / TAU / 1e6)
    };
    let gs_1ghz = dqd(1e9)?;
    rows.push(CheckRow {
        name: "spin_photon_1GHz_vs_quote",
        computed: gs_1ghz,
        reference: "0.2".into(),
        tolerance: "30%",
        unit: "MHz/2pi",
        pass: within(gs_1ghz, 0.2, 0.30),
    });
    rows.push(CheckRow {
        name: "spin_photon_1GHz_vs_oracle",
        computed: gs_1ghz,
        reference: "0.2452".into(),
        tolerance: "1%",
        unit: "MHz/2pi",
        pass: within(gs_1ghz, 0.2452, 0.01),
    });
    let gs_100mhz = dqd(100e6)?;
    rows.push(CheckRow {
        name: "spin_photon_100MHz_vs_quote",
        computed: gs_100mhz,
        reference: "2".into(),
        tolerance: "30%",
        unit: "MHz/2pi",
        pass: within(gs_100mhz, 2.0, 0.30),
    });
    rows.push(CheckRow {
        name: "spin_photon_100MHz_vs_oracle",
        computed: gs_100mhz,
        reference: "2.452".into(),
        tolerance: "1%",
        unit: "MHz/2pi",
        pass: within(gs_100mhz, 2.452, 0.01),
    });

    // Charge-induced spin decoherence.
    let deco = feq_core::couplings::spin_decoherence_from_charge(
        &constants,
        1e5,
        100e-9,
        constants.planck * 1e9,
        TAU * 0.36e6,
    )?;
    let deco_khz = deco.rate / TAU / 1e3;
    rows.push(CheckRow {
        name: "spin_decoherence_from_charge",
        computed: deco_khz,
        reference: "7".into(),
        tolerance: "10%",
        unit: "kHz/2pi",
        pass: within(deco_khz, 7.0, 0.10),
    });

    let mut table = ResultTable::new(&[
        "check",
        "computed",
        "reference",
        "tolerance",
        "unit",
        "pass",
    ]);
    let mut failures = 0usize;
    for row in &rows {
        if !row.pass {
            failures += 1;
        }
        table.push(vec![
            row.name.to_string(),
            num(row.computed),
            row.reference.clone(),
            row.tolerance.to_string(),
            row.unit.to_string(),
            if row.pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    table.note("checks", rows.len().to_string());
    table.note("failures", failures.to_string());

    let path = out_path(resolved, "reproduce_paper.csv");
    table.write_csv(&path, "reproduce-paper", &resolved.config.to_json())?;

    for row in &rows {
        println!(
            "{} {:32} computed {:<12.6} reference {} ({} {})",
            if row.pass { "PASS" } else { "FAIL" },
            row.name,
            row.computed,
            row.reference,
            row.tolerance,
            row.unit,
        );
    }
    println!(
        "wrote {} ({} checks, {} failing)",
        path.display(),
        rows.len(),
        failures
    );
    Ok(if failures > 0 { 1 } else { 0 })
}
