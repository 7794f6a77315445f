// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra used by the lattice models.

mod eigen;
mod expm;
mod matrix;

pub use eigen::{eigen_pairs, hessenberg, schur, EigenPairs, Schur};
pub use expm::{expm, propagator};
pub use matrix::{vec_norm, ComplexMatrix, Lu};
