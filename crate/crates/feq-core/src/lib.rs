//! Numerical design toolkit for floating-electron qubits: electrons held in
//! vacuum above liquid helium-4 or solid neon.
//!
//! The crate covers the full modelling chain for this qubit platform:
//!
//! - [`materials`] — physical constants and the substrate parameter catalog
//!   (relative permittivity, image-charge factor, surface barrier, spectroscopy
//!   offset).
//! - [`schrodinger1d`] — the vertical image-charge potential with an optional
//!   pressing/pulling field, a finite-difference eigensolver for the Rydberg
//!   ladder, Stark sweeps, Hellmann-Feynman validation, offset calibration and
//!   the electron-escape readout window.
//! - [`couplings`] — closed-form charge-photon, EDSR, double-dot spin-photon
//!   and dipole-dipole coupling strengths plus the charge-induced spin
//!   decoherence rate.
//! - [`readout`] — dispersive LC-resonator readout of the Rydberg transition:
//!   driven two-level steady state, susceptibility, transmission, SNR and
//!   capacitance sensitivity.
//! - [`config`] — the JSON run-configuration schema shared by the CLI and the
//!   browser demo.
//!
//! Internally everything is SI: energies in joules, lengths in metres, rates
//! and couplings as angular frequencies in rad/s. Conversion helpers live in
//! [`constants`].

// `!(x > 0.0)` guards are used instead of `x <= 0.0` throughout: they also
// reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod constants;
pub mod couplings;
pub mod error;
pub mod materials;
pub mod readout;
pub mod schrodinger1d;
pub mod tridiag;

pub use error::{Error, Result};
