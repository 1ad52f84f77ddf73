//! Beam selection versus antenna selection over Rician fading channels.
//!
//! A base station drives `M` linear equally spaced antennas through an
//! `M x M` Butler fixed beamforming network and transmits on the beam with
//! the highest SNR. This crate computes the distribution of the resulting
//! beam selection gain exactly, brackets it with asymptotically tight
//! stochastic bounds, evaluates the derived performance measures (expected
//! gain, ergodic capacity, outage), compares everything against plain
//! antenna selection, and validates the analytic layer with seeded Monte
//! Carlo simulation.
//!
//! Modules:
//! - [`specfun`]: scalar special functions (Bessel I0, Marcum Q, chi-square
//!   and noncentral chi-square CDFs/quantiles, Gaussian CDF/inverse).
//! - [`beams`]: Butler network geometry, per-beam LOS gains, majorization
//!   diagnostics.
//! - [`dist`]: exact and bounding CDFs of the selection gains and their
//!   quantiles.
//! - [`perf`]: expected gain, ergodic capacity, outage probability/capacity,
//!   growth diagnostics.
//! - [`mc`]: seeded Monte Carlo simulation and empirical-CDF agreement
//!   statistics.

pub mod beams;
pub mod dist;
pub mod error;
pub mod mc;
pub mod perf;
pub mod specfun;

pub use error::{Error, Result};
