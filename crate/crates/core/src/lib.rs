//! Stable-distribution noise models for diffusion-based molecular timing
//! channels.
//!
//! A particle released into a driftless 1D diffusion channel arrives after a
//! Lévy-distributed delay. Timing channels that encode information in release
//! times, or in the gap between two releases, therefore see additive noise
//! drawn from the α = 1/2 stable family. This crate provides
//!
//! * [`specfun`]: the Faddeeva, Dawson and Voigt functions the closed-form
//!   densities are built from;
//! * [`stable`]: characteristic functions, closed-form and numerically
//!   inverted densities and distribution functions, tail asymptotics;
//! * [`channels`]: maps from physical channel descriptions to noise laws;
//! * [`sim`]: seeded Monte Carlo sampling and Kolmogorov–Smirnov checks.

#![allow(clippy::excessive_precision)]

pub mod channels;
pub mod error;
mod quad;
pub mod sim;
pub mod specfun;
pub mod stable;

pub use error::{Error, Result};
pub use specfun::ComplexValue;

/// Crate version, recorded in generated artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
