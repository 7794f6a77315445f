// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Non-Hermitian Aharonov-Bohm cages on the generalized cross-stitch lattice
//! and the anti-PT-symmetric Creutz ladder.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a Hessenberg/QR eigensolver and the
//!   matrix exponential.
//! - [`lattice`]: real-space and Bloch Hamiltonians plus the similarity
//!   transform onto decoupled dimers.
//! - [`spectral`]: spectra, band flatness, exceptional-point diagnostics and
//!   phase sweeps.
//! - [`cls`]: compact localized states and single-site decompositions.
//! - [`dynamics`]: exact propagation, closed-form single-site solutions and
//!   confinement / edge-state observables.
//! - [`resonator`]: the three-mode coupled-resonator unit and its adiabatic
//!   elimination to an imaginary coupling.

pub mod cls;
pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod resonator;
pub mod spectral;

pub use error::{Error, Result};
pub use lattice::{Boundary, LatticeParams, SiteIndex, Sublattice};
pub use linalg::ComplexMatrix;

/// Complex double-precision scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
