//! Exact and desk-scale numerical engine for photon-emission-induced collapse
//! in the lossy-cavity Dicke model.
//!
//! A register of `M` up spins (top row) and `N` down spins (bottom row) emits
//! `p` photons with a probability fixed by angular-momentum addition; the
//! emission leaves the spins in a resonating-valence-bond state with
//! `N - M + 2p` unpaired spins. This crate provides:
//!
//! * [`algebra`]: big-integer / big-rational combinatorics, signed
//!   square-root-of-rational amplitudes, Clebsch-Gordan coefficients and the
//!   row-Schmidt closed forms.
//! * [`spin`]: dense state vectors over `2^mu` spin-z basis states, collective
//!   spin operators, sector projection, the collapsed and RVB constructions.
//! * [`emission`]: exact photon-count distributions, moments, spinon
//!   statistics, asymptotic regimes and imbalance sweeps.
//! * [`collapse`]: the photon-traced ensemble, the seeded photon-count
//!   sampler and the dense eigendecomposition oracle.
//!
//! The crate is `no_std` (it needs `alloc`); file formats and the command line
//! live in the companion `rvb` crate.
//!
//! ```
//! use rvb_core::emission::EmissionDistribution;
//! use rvb_core::spin::{collapsed_state, rvb_state, SystemShape};
//!
//! let dist = EmissionDistribution::new(2, 2)?; // P(p) = 1/3, 1/2, 1/6
//! assert!(dist.is_normalized());
//!
//! let shape = SystemShape::new(2, 2)?;
//! let collapsed = collapsed_state(shape, 1)?; // after one photon
//! let rvb = rvb_state(shape, 1)?;
//! assert!(collapsed.max_abs_diff(&rvb) < 1e-9);
//! # Ok::<(), rvb_core::Error>(())
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod collapse;
pub mod emission;
mod error;
pub mod linalg;
pub mod spin;
pub mod stats;

pub use error::{Error, Result};
pub(crate) use error::domain;

/// Tolerance used for amplitude equality and eigenvalue residual checks.
pub const STATE_TOLERANCE: f64 = 1e-9;

/// Tolerance on unit norm of normalized state vectors.
pub const NORM_TOLERANCE: f64 = 1e-10;
