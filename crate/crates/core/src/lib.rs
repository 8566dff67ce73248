//! Core pricing library for European vanilla options under the Black-Scholes
//! model, built around independent solution routes that cross-check each other:
//!
//! - [`closed_form`] — the analytic call/put formulas, d±, delta, and
//!   put-call parity.
//! - [`heat`] — the change-of-variables chain reducing the pricing PDE to the
//!   heat equation, priced by Gaussian-kernel quadrature.
//! - [`fd`] — a finite-difference solver (implicit / Crank-Nicolson) for the
//!   backward PDE on a truncated spot grid.
//! - [`separable`] — two special solution families (power-exponential and
//!   product ansatz) with analytic characteristic roots and PDE residuals.
//! - [`hedge`] — geometric Brownian motion simulation and a discrete
//!   delta-hedging experiment measuring replication error.
//!
//! The crate is `no_std`-compatible (enable the `libm` feature and disable
//! default features); `alloc` is required for the grid solver and path
//! simulation.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("bsx-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod closed_form;
mod error;
pub mod fd;
pub mod heat;
pub mod hedge;
pub mod market;
pub mod normal;
mod num;
pub mod rng;
pub mod separable;

pub use error::Error;
pub use market::{MarketParams, OptionKind, OptionSpec, Quote};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
