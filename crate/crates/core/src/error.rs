// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model parameter lies outside its admissible domain.
    #[error("parameter `{name}` out of domain: {reason}")]
    ParameterDomain { name: &'static str, reason: String },

    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("index out of range: {what} = {value}, allowed {min}..={max}")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenpair residual {residual:e} exceeds tolerance {tolerance:e}")]
    InaccurateEigenpairs { residual: f64, tolerance: f64 },

    #[error("singular matrix")]
    Singular,

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    /// At the exceptional point J = Gamma the two CLS branches coincide and
    /// the four-state basis no longer spans a single-site excitation.
    #[error("degenerate CLS basis at the exceptional point J = Gamma = {value}")]
    DegenerateBasis { value: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}
