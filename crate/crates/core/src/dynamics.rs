// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution `psi(t) = exp(-i H t) psi(0)` and the observables built on
//! it: closed-form single-site solutions, the oscillation period, the
//! confinement window and edge-state intensities.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::lattice::{build_creutz, Boundary, LatticeParams};
use crate::linalg::{propagator, ComplexMatrix};
use crate::spectral::eig;

/// Eigenvector condition number above which the spectral propagator is
/// abandoned for Padé scaling and squaring.
pub const SPECTRAL_COND_LIMIT: f64 = 1e6;

/// Below this `|omega t|` the ratio `sin(omega t) / omega` uses its Taylor series.
const SINC_SERIES_CUTOFF: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(pub Vec<C64>);

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if let Some(p) = amplitudes
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite { row: p, col: 0 });
        }
        Ok(Self(amplitudes))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![C64::new(0.0, 0.0); len])
    }

    /// Unit excitation on flat index `site`.
    pub fn single_site(len: usize, site: usize) -> Result<Self> {
        if site >= len {
            return Err(Error::IndexOutOfRange {
                what: "site",
                value: site,
                min: 0,
                max: len.saturating_sub(1),
            });
        }
        let mut v = Self::zeros(len);
        v.0[site] = C64::new(1.0, 0.0);
        Ok(v)
    }

    /// Builds a state from real amplitudes, optionally normalizing it.
    pub fn from_real(values: &[f64], normalize: bool) -> Result<Self> {
        let mut v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        if normalize {
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n > 0.0 {
                v.iter_mut().for_each(|z| *z /= n);
            }
        }
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.0
    }

    pub fn intensities(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn total_intensity(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    /// `|psi_s(t)|^2`, indexed `[time][site]`.
    pub site_intensity: Vec<Vec<f64>>,
    pub total_intensity: Vec<f64>,
    /// Whether every state was rescaled to unit total intensity.
    pub normalized: bool,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<StateVector>) -> Self {
        let site_intensity: Vec<Vec<f64>> = states.iter().map(StateVector::intensities).collect();
        let total_intensity = site_intensity.iter().map(|s| s.iter().sum()).collect();
        Self {
            times,
            states,
            site_intensity,
            total_intensity,
            normalized: false,
        }
    }

    /// Per-time rescaling to unit total intensity. Zero states stay zero.
    pub fn normalized(&self) -> Self {
        let states = self
            .states
            .iter()
            .map(|s| {
                let norm = s.total_intensity().sqrt();
                if norm > 0.0 {
                    StateVector(s.0.iter().map(|z| z / norm).collect())
                } else {
                    s.clone()
                }
            })
            .collect();
        let mut t = Self::new(self.times.clone(), states);
        t.normalized = true;
        t
    }

    pub fn sites(&self) -> usize {
        self.states.first().map_or(0, StateVector::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    /// Spectral decomposition when well conditioned, Padé otherwise.
    Auto,
    /// `V diag(exp(-i lambda t)) V^-1`.
    Spectral,
    /// Scaling and squaring, recomputed from `t = 0` for every sample.
    Pade,
}

/// `exp(-i H t) psi0` at every requested time.
pub fn evolve(h: &ComplexMatrix, psi0: &StateVector, times: &[f64]) -> Result<Trajectory> {
    evolve_with(h, psi0, times, Propagation::Auto)
}

pub fn evolve_with(
    h: &ComplexMatrix,
    psi0: &StateVector,
    times: &[f64],
    method: Propagation,
) -> Result<Trajectory> {
    if psi0.len() != h.dim() {
        return Err(Error::Shape {
            expected: h.dim(),
            actual: psi0.len(),
        });
    }
    if let Some(bad) = times.iter().position(|t| !t.is_finite()) {
        return Err(Error::ParameterDomain {
            name: "times",
            reason: format!("non-finite time at index {bad}"),
        });
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::ParameterDomain {
            name: "times",
            reason: "sample times must be strictly increasing".into(),
        });
    }

    let spectral = match method {
        Propagation::Pade => None,
        Propagation::Spectral => Some(SpectralPropagator::new(h, psi0)?),
        Propagation::Auto => SpectralPropagator::new(h, psi0)
            .ok()
            .filter(|s| s.condition < SPECTRAL_COND_LIMIT),
    };

    let states = times
        .iter()
        .map(|&t| match &spectral {
            Some(s) => Ok(s.at(t)),
            None => Ok(StateVector(propagator(h, t)?.matvec(&psi0.0)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory::new(times.to_vec(), states))
}

struct SpectralPropagator {
    values: Vec<C64>,
    vectors: ComplexMatrix,
    coefficients: Vec<C64>,
    condition: f64,
}

impl SpectralPropagator {
    fn new(h: &ComplexMatrix, psi0: &StateVector) -> Result<Self> {
        let spectrum = eig(h)?;
        let vectors = spectrum.right_eigenvectors;
        let condition = vectors.condition_one();
        let coefficients = vectors.lu()?.solve(&psi0.0)?;
        Ok(Self {
            values: spectrum.eigenvalues,
            vectors,
            coefficients,
            condition,
        })
    }

    fn at(&self, t: f64) -> StateVector {
        let weighted: Vec<C64> = self
            .values
            .iter()
            .zip(&self.coefficients)
            .map(|(l, c)| c * (C64::new(0.0, -t) * l).exp())
            .collect();
        StateVector(
            self.vectors
                .matvec(&weighted)
                .expect("eigenvector matrix matches coefficient length"),
        )
    }
}

/// Which ladder leg a single-site excitation starts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    /// Sublattice A.
    Upper,
    /// Sublattice B.
    Lower,
}

/// `omega = sqrt(J^2 - Gamma^2)`, principal branch (imaginary for `Gamma > J`).
pub fn omega(params: &LatticeParams) -> C64 {
    C64::new(params.j * params.j - params.gamma * params.gamma, 0.0).sqrt()
}

/// `sin(omega t) / omega`, continuous through `omega = 0`.
pub fn sinc_t(omega: C64, t: f64) -> C64 {
    let x = omega * t;
    if x.norm() < SINC_SERIES_CUTOFF {
        let x2 = x * x;
        t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
    } else {
        x.sin() / omega
    }
}

/// Closed-form evolution of a single-site excitation in cell `j`, on the
/// six-site window `[A_{j-1}, B_{j-1}, A_j, B_j, A_{j+1}, B_{j+1}]`.
///
/// With `S = sin(omega t) / omega` and `C = cos(omega t)`:
///
/// ```text
/// Upper: [-J/2 S,  J/2 S,  C,      Gamma S,  J/2 S,  J/2 S]
/// Lower: [-J/2 S,  J/2 S,  Gamma S, C,      -J/2 S, -J/2 S]
/// ```
///
/// All amplitudes stay real because `-i H` is real for the ladder at the
/// cage phases. At `Gamma = J`, `S -> t` and `C -> 1`; above it the
/// trigonometric functions turn hyperbolic.
pub fn analytic_single_site(params: &LatticeParams, leg: Leg, t: f64) -> Result<StateVector> {
    params.validate()?;
    params.require_canonical("closed-form single-site evolution")?;
    let w = omega(params);
    let s = sinc_t(w, t);
    let c = (w * t).cos();
    let half = 0.5 * params.j * s;
    let g = params.gamma * s;
    let amps = match leg {
        Leg::Upper => vec![-half, half, c, g, half, half],
        Leg::Lower => vec![-half, half, g, c, -half, -half],
    };
    Ok(StateVector(amps))
}

/// Revival period `pi / sqrt(J^2 - Gamma^2)` of the confined intensity.
pub fn period(params: &LatticeParams) -> Result<f64> {
    params.validate()?;
    params.require_canonical("period")?;
    if params.gamma >= params.j {
        return Err(Error::Unsupported(format!(
            "no real period for Gamma >= J (Gamma = {}, J = {})",
            params.gamma, params.j
        )));
    }
    Ok(PI / (params.j * params.j - params.gamma * params.gamma).sqrt())
}

/// Inclusive range of flat site indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteInterval {
    pub first: usize,
    pub last: usize,
}

impl SiteInterval {
    /// One-based `(first, last)`, as sites are numbered in figures.
    pub fn site_numbers(&self) -> (usize, usize) {
        (self.first + 1, self.last + 1)
    }

    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Default intensity threshold for [`confinement_region`].
pub const CONFINEMENT_THRESHOLD: f64 = 1e-10;

/// Smallest interval outside which every site intensity stays below
/// `threshold` at all sampled times; `None` if no site ever reaches it.
pub fn confinement_region(traj: &Trajectory, threshold: f64) -> Result<Option<SiteInterval>> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::ParameterDomain {
            name: "threshold",
            reason: format!("must be > 0, got {threshold}"),
        });
    }
    let active: Vec<usize> = (0..traj.sites())
        .filter(|&s| traj.site_intensity.iter().any(|row| row[s] >= threshold))
        .collect();
    Ok(match (active.first(), active.last()) {
        (Some(&first), Some(&last)) => Some(SiteInterval { first, last }),
        _ => None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct EdgeState {
    pub state: StateVector,
    pub energy: C64,
    /// `||H psi - E psi||` on the open ladder.
    pub residual: f64,
}

fn require_open_canonical(params: &LatticeParams, what: &str) -> Result<()> {
    params.validate()?;
    if params.boundary != Boundary::Open {
        return Err(Error::Unsupported(format!(
            "{what} requires open boundaries"
        )));
    }
    params.require_canonical(what)
}

/// Boundary dimer eigenstate: left `[1, 1, 0, ...]/sqrt2` at `+i Gamma`,
/// right `[..., 0, 1, -1]/sqrt2` at `-i Gamma`.
pub fn edge_state(params: &LatticeParams, side: Side) -> Result<EdgeState> {
    require_open_canonical(params, "edge states")?;
    let dim = params.sites();
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    let energy = match side {
        Side::Left => {
            amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
            amps[1] = C64::new(FRAC_1_SQRT_2, 0.0);
            C64::new(0.0, params.gamma)
        }
        Side::Right => {
            amps[dim - 2] = C64::new(FRAC_1_SQRT_2, 0.0);
            amps[dim - 1] = C64::new(-FRAC_1_SQRT_2, 0.0);
            C64::new(0.0, -params.gamma)
        }
    };
    let h = build_creutz(params)?;
    let h_psi = h.matvec(&amps)?;
    let residual = h_psi
        .iter()
        .zip(&amps)
        .map(|(x, y)| (x - energy * y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(EdgeState {
        state: StateVector(amps),
        energy,
        residual,
    })
}

/// Total intensity `e^{-2 Gamma t}` (right) or `e^{+2 Gamma t}` (left) of an
/// evolving edge state.
pub fn edge_intensity(params: &LatticeParams, side: Side, t: f64) -> Result<f64> {
    require_open_canonical(params, "edge intensity")?;
    let rate = 2.0 * params.gamma * t;
    Ok(match side {
        Side::Left => rate.exp(),
        Side::Right => (-rate).exp(),
    })
}

/// `n` uniform samples on `[start, stop)`.
pub fn uniform_times(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| start + (stop - start) * i as f64 / n as f64)
        .collect()
}
