//! Evanescent-mode tunneling simulator.
//!
//! Computes the measurable physics of waves crossing classically forbidden
//! regions: complex scattering amplitudes of stratified barriers via 2×2
//! transfer matrices, phase-time delays `τ = dφ/dω` and their Hartman
//! saturation with barrier length, the Goos-Hänchen shift of total internal
//! reflection, time-domain pulse propagation through barrier channels, and
//! the non-classicality diagnostics of evanescent modes.
//!
//! Five barrier families share one engine:
//!
//! * double-prism frustrated total internal reflection (the optical analog of
//!   tunneling),
//! * undersized rectangular waveguides below TE₁₀ cutoff,
//! * 1D photonic lattices inside a band gap,
//! * 1D acoustic impedance arrays inside a band gap,
//! * rectangular quantum barriers in natural units.
//!
//! Start with [`scenarios`] to build a [`xfermat::Stack`], take spectra with
//! [`xfermat::Stack::spectrum`], and feed them to [`timing`] and [`pulse`].
//! The `examples/` directory has one runnable program per capability; the
//! `evanesim` binary drives batch sweeps from the command line.
//!
//! All sign conventions live in [`convention`].

pub mod cli;
pub mod convention;
pub mod pulse;
pub mod scenarios;
pub mod timing;
pub mod virtuality;
pub mod wavecore;
pub mod xfermat;

pub use convention::{HBAR, SPEED_OF_LIGHT};
pub use scenarios::{DoublePrismSpec, QuantumBarrierSpec};
pub use timing::Channel;
pub use wavecore::{
    AcousticMedium, Classification, FrequencyGrid, Medium, ObliqueContext, Polarization, Region,
    WaveNumber,
};
pub use xfermat::{Layer, ScatterSpectrum, Stack, TransferMatrix};
