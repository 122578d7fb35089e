//! Simulation toolkit for diffuse light storage in a cold-atom cloud and the
//! interferometric readout of a four-unit "quantum hologram".
//!
//! The crate is organised around the stages of the physical pipeline:
//!
//! * [`medium`] — control-field-modified susceptibility, cross-sections and
//!   optical-depth geometry of a Gaussian atomic cloud,
//! * [`transport`] — Monte-Carlo photon random walk through the cloud,
//! * [`spectral`] — coherent spectral bookkeeping along trajectories and
//!   order-resolved pulse profiles,
//! * [`protocol`] — write-in regime classification and photon-to-atom mapping,
//! * [`hologram`] — truncated Fock-space engine for the macroscopic Ψ⁻ state,
//! * [`readout`] — Mach-Zehnder atom-number detection, correlation recovery
//!   and the CHSH test on the post-selected pair sector.
//!
//! All randomness flows through caller-supplied deterministic RNG streams
//! (see [`rng`]), which keeps every ensemble bit-reproducible regardless of
//! worker count.

pub mod geometry;
pub mod hologram;
pub mod medium;
pub mod protocol;
pub mod readout;
pub mod rng;
pub mod spectral;
pub mod stats;
pub mod transport;

/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
