//! Exact non-Markovian decoherence of a single bosonic mode coupled to an
//! Ohmic-family reservoir with a `1/f^x` low-frequency noise spectrum.
//!
//! Everything here is dimensionless: frequencies are measured in units of
//! the resonator frequency `ω₀` (or any unit consistent with the fields of
//! [`ReservoirModel`]), times in `1/ω₀`, and temperature enters through
//! `θ = k_B T / (ħ ω₀)`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! the preset catalog live in the `flicker` crate.
//!
//! Module map:
//!
//! * [`spectral`]: spectral density, thermal occupation, memory kernels,
//!   self-energy shift and localized-mode extraction.
//! * [`greens`]: the propagating Green's function `u(t)` (two independent
//!   solvers), the correlation function `v(t)`, its two-time form, and the
//!   time-dependent master-equation coefficients.
//! * [`noise`]: the exact quantum noise spectrum, its low-frequency
//!   power-law limit, power-law fitting and the classical RTN spectra.
//! * [`wigner`]: closed-form Wigner-function propagation for Fock
//!   superpositions.
//! * [`oracle`]: brute-force checkers (discretized bath, direct double
//!   quadrature, truncated-Fock master equation with displaced parity).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod greens;
pub mod noise;
pub mod oracle;
pub mod quad;
pub mod spectral;
pub mod units;
pub mod wigner;

mod special;

pub use error::{Error, Result};
pub use greens::{GreensSolution, MasterCoefficients, TimeGrid};
pub use noise::{PowerLawFit, SpectrumSeries};
pub use quad::QuadConfig;
pub use spectral::{KernelSample, LocalizedMode, ReservoirModel};
pub use wigner::{GridSpec, SuperpositionState, WignerField};

pub use num_complex::Complex64;
