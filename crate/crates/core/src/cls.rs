// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Compact localized states (CLSs) of the Creutz ladder at the cage phases.
//!
//! A CLS lives on the plaquette `[A_j, B_j, A_{j+1}, B_{j+1}]` with amplitudes
//! `[-s, s, 1, 1]`, where `s` solves `J s^2 - 2 Gamma s + J = 0`:
//!
//! ```text
//! alpha = (Gamma - sqrt(Gamma^2 - J^2)) / J
//! beta  = (Gamma + sqrt(Gamma^2 - J^2)) / J
//! ```
//!
//! The plaquette rows then give the energy `E = i (Gamma - J s)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::lattice::{LatticeParams, SiteIndex, Sublattice};
use crate::linalg::{vec_norm, ComplexMatrix};

/// Flat-band branch, `E = +sqrt(J^2 - Gamma^2)` or `-sqrt(J^2 - Gamma^2)`
/// on the principal square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

/// `(alpha, beta)` on the principal branch of the square root.
pub fn cls_signs(j: f64, gamma: f64) -> (C64, C64) {
    let root = C64::new(gamma * gamma - j * j, 0.0).sqrt();
    let g = C64::new(gamma, 0.0);
    ((g - root) / j, (g + root) / j)
}

/// Principal flat-band energy `sqrt(J^2 - Gamma^2)` (imaginary when `Gamma > J`).
pub fn flat_band_energy(j: f64, gamma: f64) -> C64 {
    C64::new(j * j - gamma * gamma, 0.0).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactState {
    /// `A_j` of the plaquette `(j, j+1)`.
    pub window_start: SiteIndex,
    /// Unnormalized `[-s, s, 1, 1]` on `[A_j, B_j, A_{j+1}, B_{j+1}]`.
    pub amplitudes: [C64; 4],
    pub energy: C64,
    pub alpha: C64,
    pub beta: C64,
}

impl CompactState {
    fn with_sign(params: &LatticeParams, cell: usize, s: C64) -> Result<Self> {
        let (alpha, beta) = cls_signs(params.j, params.gamma);
        let one = C64::new(1.0, 0.0);
        Ok(Self {
            window_start: SiteIndex::new(cell, Sublattice::A)?,
            amplitudes: [-s, s, one, one],
            energy: C64::new(0.0, 1.0) * (C64::new(params.gamma, 0.0) - s * params.j),
            alpha,
            beta,
        })
    }

    /// The sign `s` in the `[-s, s, 1, 1]` gauge.
    pub fn sign(&self) -> C64 {
        self.amplitudes[1]
    }

    /// Amplitudes scaled to unit 2-norm.
    pub fn normalized(&self) -> [C64; 4] {
        let norm = vec_norm(&self.amplitudes);
        self.amplitudes.map(|a| a / norm)
    }

    /// Full-lattice vector of length `dim`, zero outside the plaquette.
    pub fn embed(&self, dim: usize) -> Result<Vec<C64>> {
        let start = self.window_start.flat();
        if start + 4 > dim {
            return Err(Error::IndexOutOfRange {
                what: "plaquette end",
                value: start + 4,
                min: 4,
                max: dim,
            });
        }
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[start..start + 4].copy_from_slice(&self.amplitudes);
        Ok(v)
    }
}

/// CLS on the plaquette spanning cells `cell` and `cell + 1` (1-based).
///
/// The sign is picked by matching `i (Gamma - J s)` against the requested
/// branch energy rather than by a fixed alpha/beta labelling: for
/// `Gamma < J` the principal root ties `alpha` to `-sqrt(J^2 - Gamma^2)`.
pub fn build_cls(params: &LatticeParams, cell: usize, branch: Branch) -> Result<CompactState> {
    params.validate()?;
    params.require_canonical("compact localized states")?;
    if cell < 1 || cell + 1 > params.n {
        return Err(Error::IndexOutOfRange {
            what: "cell",
            value: cell,
            min: 1,
            max: params.n - 1,
        });
    }
    let (alpha, beta) = cls_signs(params.j, params.gamma);
    let e = flat_band_energy(params.j, params.gamma);
    let target = match branch {
        Branch::Plus => e,
        Branch::Minus => -e,
    };
    let a = CompactState::with_sign(params, cell, alpha)?;
    let b = CompactState::with_sign(params, cell, beta)?;
    if (a.energy - target).norm() <= (b.energy - target).norm() {
        Ok(a)
    } else {
        Ok(b)
    }
}

/// `||H psi - E psi||_2` with the state embedded in the full lattice.
pub fn verify_cls(h: &ComplexMatrix, state: &CompactState) -> Result<f64> {
    let psi = state.embed(h.dim())?;
    let h_psi = h.matvec(&psi)?;
    let r: Vec<C64> = h_psi
        .iter()
        .zip(&psi)
        .map(|(x, y)| x - state.energy * y)
        .collect();
    Ok(vec_norm(&r))
}

/// A single-site excitation written as four CLSs on its two flanking plaquettes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClsDecomposition {
    pub target: SiteIndex,
    /// Weights of `basis`, in the same order.
    pub coefficients: [C64; 4],
    /// `[alpha-CLS(j-1), beta-CLS(j-1), alpha-CLS(j), beta-CLS(j)]`, where
    /// `CLS(m)` sits on the plaquette `(m, m+1)` and `j` is the target cell.
    pub basis: [CompactState; 4],
}

impl ClsDecomposition {
    /// `sum_i c_i CLS_i` over the full lattice.
    pub fn reconstruct(&self, dim: usize) -> Result<Vec<C64>> {
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for (c, state) in self.coefficients.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(state.embed(dim)?) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// `max |reconstruct - e_target|` over the full lattice.
    pub fn reconstruction_error(&self, dim: usize) -> Result<f64> {
        let rebuilt = self.reconstruct(dim)?;
        let t = self.target.flat();
        Ok(rebuilt
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let want = if i == t { 1.0 } else { 0.0 };
                (v - want).norm()
            })
            .fold(0.0, f64::max))
    }
}

pub fn decompose_single_site(params: &LatticeParams, site: SiteIndex) -> Result<ClsDecomposition> {
    params.validate()?;
    params.require_canonical("CLS decomposition")?;
    if (params.j - params.gamma).abs() <= 1e-12 * params.j {
        return Err(Error::DegenerateBasis { value: params.j });
    }
    let cell = site.cell();
    if cell < 2 || cell + 1 > params.n {
        return Err(Error::IndexOutOfRange {
            what: "cell",
            value: cell,
            min: 2,
            max: params.n - 1,
        });
    }
    let (alpha, beta) = cls_signs(params.j, params.gamma);
    let basis = [
        CompactState::with_sign(params, cell - 1, alpha)?,
        CompactState::with_sign(params, cell - 1, beta)?,
        CompactState::with_sign(params, cell, alpha)?,
        CompactState::with_sign(params, cell, beta)?,
    ];
    let denom = 2.0 * alpha - 2.0 * beta;
    let one = C64::new(1.0, 0.0);
    let tail = match site.sub() {
        Sublattice::A => [-one, one],
        Sublattice::B => [one, -one],
    };
    let coefficients = [
        -beta / denom,
        alpha / denom,
        tail[0] / denom,
        tail[1] / denom,
    ];
    Ok(ClsDecomposition {
        target: site,
        coefficients,
        basis,
    })
}
