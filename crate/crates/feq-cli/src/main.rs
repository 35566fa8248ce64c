//! `feq` — floating-electron qubit design toolkit.
//!
//! Subcommands compute Rydberg spectra, Stark sweeps, coupling figures,
//! dispersive-readout observables, escape windows, grid-convergence studies
//! and the reference-figure reproduction report. Each command writes one CSV
//! with a `#` provenance header; see README for the config schema.
//!
//! Exit codes: 0 success, 1 failing reproduction rows, 2 config/validation
//! error, 3 numerical failure.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use feq_core::config::{MaterialChoice, RunConfig};
use feq_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "feq", version, about = "Floating-electron qubit design toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the vertical Rydberg spectrum; writes levels and wavefunctions
    Spectrum(CommonArgs),
    /// Sweep the perpendicular field and track f12 and state heights
    StarkSweep(CommonArgs),
    /// Evaluate the closed-form coupling figures
    Couplings(CommonArgs),
    /// Dispersive-readout observables and a transmission scan
    Readout(CommonArgs),
    /// Pulling-field window where the excited Rydberg state escapes
    EscapeWindow(CommonArgs),
    /// Grid refinement and domain study of the eigensolver
    Convergence(CommonArgs),
    /// Recompute the published reference figures and report pass/fail
    ReproducePaper(CommonArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// JSON run configuration (defaults apply when omitted)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Substrate: helium or neon
    #[arg(long)]
    material: Option<String>,
    /// Perpendicular field in V/m: a single value or min:max:points
    #[arg(long)]
    eperp: Option<String>,
    /// Number of Rydberg levels to solve
    #[arg(long)]
    levels: Option<usize>,
    /// Output CSV path (per-command default otherwise)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker pool width (FEQ_THREADS env respected as fallback)
    #[arg(long)]
    threads: Option<usize>,
}

/// Parsed `--eperp` override.
#[derive(Clone, Copy)]
enum EperpArg {
    Single(f64),
    Range { min: f64, max: f64, points: usize },
}

fn parse_eperp(text: &str) -> Result<EperpArg, CoreError> {
    if let Some((min, rest)) = text.split_once(':') {
        let (max, points) = rest
            .split_once(':')
            .ok_or_else(|| CoreError::Config(format!("expected min:max:points, got '{text}'")))?;
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| CoreError::Config(format!("bad field value '{s}' in --eperp")))
        };
        let points = points
            .parse::<usize>()
            .map_err(|_| CoreError::Config(format!("bad point count in --eperp '{text}'")))?;
        Ok(EperpArg::Range {
            min: parse(min)?,
            max: parse(max)?,
            points,
        })
    } else {
        text.parse::<f64>()
            .map(EperpArg::Single)
            .map_err(|_| CoreError::Config(format!("bad --eperp value '{text}'")))
    }
}

/// Configuration resolved from file + flag overrides.
pub struct Resolved {
    pub config: RunConfig,
    pub threads: usize,
    pub out_override: Option<PathBuf>,
}

fn resolve(args: &CommonArgs) -> Result<Resolved, CoreError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CoreError::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };

    if let Some(material) = &args.material {
        let choice: MaterialChoice = material.parse()?;
        config.spectrum.material = choice;
        config.stark_sweep.material = choice;
        config.escape.material = choice;
        config.convergence.material = choice;
    }
    if let Some(eperp) = &args.eperp {
        match parse_eperp(eperp)? {
            EperpArg::Single(v) => {
                config.spectrum.eperp_V_per_m = v;
                config.stark_sweep.eperp_min_V_per_m = v;
                config.stark_sweep.eperp_max_V_per_m = v;
                config.stark_sweep.points = 1;
            }
            EperpArg::Range { min, max, points } => {
                config.stark_sweep.eperp_min_V_per_m = min;
                config.stark_sweep.eperp_max_V_per_m = max;
                config.stark_sweep.points = points;
                config.escape.eperp_min_V_per_m = min;
                config.escape.eperp_max_V_per_m = max;
            }
        }
    }
    if let Some(levels) = args.levels {
        config.spectrum.levels = levels;
        config.stark_sweep.levels = levels;
    }

    let threads = match args.threads {
        Some(n) => n,
        None => match std::env::var("FEQ_THREADS") {
            Ok(v) => v.parse::<usize>().map_err(|_| {
                CoreError::Config(format!("FEQ_THREADS must be an integer, got '{v}'"))
            })?,
            Err(_) => config.threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
            }),
        },
    };
    if threads == 0 {
        return Err(CoreError::Config("worker pool width must be at least 1".into()));
    }

    Ok(Resolved {
        out_override: args.out.clone(),
        config,
        threads,
    })
}

fn exit_code_for(err: &commands::CliError) -> u8 {
    match err {
        commands::CliError::Io(_) => 2,
        commands::CliError::Core(core) => match core {
            CoreError::Config(_) | CoreError::InvalidInput(_) => 2,
            _ => 3,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Spectrum(a) => ("spectrum", a),
        Command::StarkSweep(a) => ("stark-sweep", a),
        Command::Couplings(a) => ("couplings", a),
        Command::Readout(a) => ("readout", a),
        Command::EscapeWindow(a) => ("escape-window", a),
        Command::Convergence(a) => ("convergence", a),
        Command::ReproducePaper(a) => ("reproduce-paper", a),
    };

    let resolved = match resolve(args) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("feq: {err}");
            return ExitCode::from(2);
        }
    };

    let outcome = match name {
        "spectrum" => commands::spectrum(&resolved),
        "stark-sweep" => commands::stark_sweep(&resolved),
        "couplings" => commands::couplings(&resolved),
        "readout" => commands::readout(&resolved),
        "escape-window" => commands::escape_window(&resolved),
        "convergence" => commands::convergence(&resolved),
        "reproduce-paper" => commands::reproduce_paper(&resolved),
        _ => unreachable!(),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("feq: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
