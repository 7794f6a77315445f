// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Coupled-resonator realization of the imaginary rung coupling.
//!
//! Two primary resonators talk through a lossy linking resonator. When the
//! linker decays much faster than it is fed (`gamma >> kappa`) its amplitude
//! follows the primaries adiabatically, `a_L = -i kappa (a_1 + e^{i delta} a_2) / gamma`,
//! and eliminating it leaves an effective 2x2 model with coupling
//! `-i e^{i delta} kappa^2 / gamma` and a common loss `-i kappa^2 / gamma`.
//! A linker phase `e^{i delta} = -1` gives the `+i Gamma` rung of the ladder;
//! gain `g = kappa^2 / gamma` on each primary cancels the common loss.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{propagator, vec_norm, ComplexMatrix};

/// `gamma / kappa` at and above which adiabatic elimination is trusted.
pub const VALID_LOSS_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonatorParams {
    /// Primary-linker coupling.
    pub kappa: f64,
    /// Linker loss rate.
    pub gamma: f64,
    /// Gain on each primary resonator.
    pub gain: f64,
    /// Unit phase `e^{i delta}` on the linker's coupling to the second primary.
    pub link_phase: C64,
}

impl ResonatorParams {
    /// Linker phase `-1` (`delta = pi`), which yields the `+i Gamma` coupling.
    pub fn new(kappa: f64, gamma: f64, gain: f64) -> Result<Self> {
        let p = Self {
            kappa,
            gamma,
            gain,
            link_phase: C64::new(-1.0, 0.0),
        };
        p.validate()?;
        Ok(p)
    }

    /// Gain set to `kappa^2 / gamma`, cancelling the induced common loss.
    pub fn balanced(kappa: f64, gamma: f64) -> Result<Self> {
        Self::new(kappa, gamma, kappa * kappa / gamma)
    }

    /// Replaces the linker phase by `e^{i delta}`; `0` and `pi` are exact.
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.link_phase = if delta == 0.0 {
            C64::new(1.0, 0.0)
        } else if delta.abs() == std::f64::consts::PI {
            C64::new(-1.0, 0.0)
        } else {
            C64::from_polar(1.0, delta)
        };
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(Error::ParameterDomain {
                name: "kappa",
                reason: format!("must be finite and >= 0, got {}", self.kappa),
            });
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::ParameterDomain {
                name: "gamma",
                reason: format!("must be finite and > 0, got {}", self.gamma),
            });
        }
        if !(self.gain.is_finite() && self.gain >= 0.0) {
            return Err(Error::ParameterDomain {
                name: "gain",
                reason: format!("must be finite and >= 0, got {}", self.gain),
            });
        }
        if (self.link_phase.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::ParameterDomain {
                name: "link_phase",
                reason: "must have unit modulus".into(),
            });
        }
        Ok(())
    }

    /// Effective rung strength `kappa^2 / gamma`.
    pub fn gamma_eff(&self) -> f64 {
        self.kappa * self.kappa / self.gamma
    }

    /// `gamma / kappa >= 10`, or no coupling at all.
    pub fn in_regime(&self) -> bool {
        self.kappa == 0.0 || self.gamma / self.kappa >= VALID_LOSS_RATIO
    }
}

/// Three-mode Hamiltonian in the order `(primary 1, linker, primary 2)`.
pub fn full_three_mode(p: &ResonatorParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let zero = C64::new(0.0, 0.0);
    let g = C64::new(0.0, p.gain);
    let k = C64::new(p.kappa, 0.0);
    let k2 = k * p.link_phase;
    ComplexMatrix::from_rows(&[
        vec![g, k, zero],
        vec![k, C64::new(0.0, -p.gamma), k2],
        vec![zero, k2, g],
    ])
}

/// Two-mode model left after eliminating the linker.
pub fn effective_two_mode(p: &ResonatorParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let ge = p.gamma_eff();
    let minus_i_ge = C64::new(0.0, -ge);
    let g = C64::new(0.0, p.gain);
    let phase = p.link_phase;
    ComplexMatrix::from_rows(&[
        vec![g + minus_i_ge, minus_i_ge * phase],
        vec![minus_i_ge * phase, g + minus_i_ge * phase * phase],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionReport {
    /// `max_t || P psi_full(t) - psi_eff(t) ||`, `P` projecting onto the primaries.
    pub error: f64,
    /// False when `gamma / kappa < 10`; the error is still computed.
    pub in_regime: bool,
}

/// Deviation between full and eliminated dynamics for an excitation of
/// primary 1 with the linker initially empty, over `samples` uniform times
/// on `[0, horizon]`.
pub fn reduction_error(
    p: &ResonatorParams,
    horizon: f64,
    samples: usize,
) -> Result<ReductionReport> {
    p.validate()?;
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::ParameterDomain {
            name: "horizon",
            reason: format!("must be finite and > 0, got {horizon}"),
        });
    }
    if samples == 0 {
        return Err(Error::ParameterDomain {
            name: "samples",
            reason: "need at least one sample".into(),
        });
    }
    let full = full_three_mode(p)?;
    let eff = effective_two_mode(p)?;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let full0 = [one, zero, zero];
    let eff0 = [one, zero];

    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let t = if samples == 1 {
            horizon
        } else {
            horizon * i as f64 / (samples - 1) as f64
        };
        let a = propagator(&full, t)?.matvec(&full0)?;
        let b = propagator(&eff, t)?.matvec(&eff0)?;
        worst = worst.max(vec_norm(&[a[0] - b[0], a[2] - b[1]]));
    }
    Ok(ReductionReport {
        error: worst,
        in_regime: p.in_regime(),
    })
}
