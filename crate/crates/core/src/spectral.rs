// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Spectra of the ladder models: eigen-decomposition with diagnostics, band
//! flatness along the Brillouin zone, exceptional-point detection and phase
//! sweeps.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{bloch, build_creutz, LatticeParams};
use crate::linalg::{eigen_pairs, vec_norm, ComplexMatrix};

/// Absolute eigenpair residual accepted for unit-norm matrices; scaled by
/// `max(1, ||H||_1)` otherwise.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Eigenvalues closer than this are treated as one (possibly coalesced) level.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Defectiveness above this marks an exceptional point.
pub const EP_THRESHOLD: f64 = 0.999;

/// Real parts are bucketed at this resolution when ordering eigenvalues, so
/// round-off does not reorder levels that share a real part.
const ORDER_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// Unit-norm right eigenvectors, column `k` paired with `eigenvalues[k]`.
    pub right_eigenvectors: ComplexMatrix,
    /// See [`ep_defectiveness`].
    pub defectiveness: f64,
    /// `max_k ||H v_k - lambda_k v_k||`.
    pub residual: f64,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.right_eigenvectors.column(k)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_real(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.re.abs())
            .fold(0.0, f64::max)
    }
}

fn order_key(z: &C64) -> (i64, f64) {
    ((z.re / ORDER_RESOLUTION).round() as i64, z.im)
}

/// Full eigen-decomposition with deterministic ordering.
pub fn eig(h: &ComplexMatrix) -> Result<Spectrum> {
    h.check_finite()?;
    let pairs = eigen_pairs(h)?;
    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (ka, kb) = (order_key(&pairs.values[a]), order_key(&pairs.values[b]));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    let eigenvalues: Vec<C64> = order.iter().map(|&k| pairs.values[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &pairs.vectors.column(src));
    }

    let mut residual: f64 = 0.0;
    for (k, lambda) in eigenvalues.iter().enumerate() {
        let v = vectors.column(k);
        let hv = h.matvec(&v)?;
        let r: Vec<C64> = hv.iter().zip(&v).map(|(a, b)| a - lambda * b).collect();
        residual = residual.max(vec_norm(&r));
    }
    let tolerance = RESIDUAL_TOL * h.norm_one().max(1.0);
    if residual.is_nan() || residual > tolerance {
        return Err(Error::InaccurateEigenpairs {
            residual,
            tolerance,
        });
    }
    let defectiveness = defectiveness_of(&eigenvalues, &vectors);
    Ok(Spectrum {
        eigenvalues,
        right_eigenvectors: vectors,
        defectiveness,
        residual,
    })
}

/// Groups eigenvalue indices into clusters (single linkage, [`CLUSTER_TOL`]).
pub fn clusters(values: &[C64]) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            if (values[a] - values[b]).norm() < CLUSTER_TOL {
                let (ra, rb) = (root(&mut label, a), root(&mut label, b));
                if ra != rb {
                    label[rb.max(ra)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut by_root: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = root(&mut label, i);
        match by_root[r] {
            Some(g) => groups[g].push(i),
            None => {
                by_root[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

fn defectiveness_of(values: &[C64], vectors: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for group in clusters(values).into_iter().filter(|g| g.len() > 1) {
        let mut min_sine: f64 = 1.0;
        for (x, &a) in group.iter().enumerate() {
            for &b in &group[x + 1..] {
                let u = vectors.column(a);
                let v = vectors.column(b);
                let overlap: C64 = u.iter().zip(&v).map(|(p, q)| p.conj() * q).sum();
                let cos2 = (overlap.norm_sqr() / (vec_norm(&u) * vec_norm(&v)).powi(2)).min(1.0);
                min_sine = min_sine.min((1.0 - cos2).sqrt());
            }
        }
        worst = worst.max(1.0 - min_sine);
    }
    worst
}

/// Coalescence of eigenvectors: maximum over clusters of nearly-equal
/// eigenvalues of `1 - sin(theta_min)`, where `theta_min` is the smallest
/// angle between two eigenvectors of the cluster. Close to 1 at an
/// exceptional point, 0 when no eigenvalues coincide or the eigenvectors of
/// coinciding eigenvalues are orthogonal.
pub fn ep_defectiveness(h: &ComplexMatrix) -> Result<f64> {
    Ok(eig(h)?.defectiveness)
}

/// Fraction of eigenvalues that share their value with at least one other.
pub fn level_coalescence(values: &[C64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let shared: usize = clusters(values)
        .iter()
        .filter(|g| g.len() > 1)
        .map(Vec::len)
        .sum();
    shared as f64 / values.len() as f64
}

/// Uniform grid on `[-pi, pi)`.
pub fn k_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| -PI + 2.0 * PI * i as f64 / points as f64)
        .collect()
}

/// Bloch bands on a k-grid, matched across k by continuation: each band
/// follows the eigenvalue nearest to its value at the previous grid point.
/// Returns one `Vec` per band.
pub fn bloch_bands(params: &LatticeParams, ks: &[f64]) -> Result<Vec<Vec<C64>>> {
    let mut bands: Vec<Vec<C64>> = (0..2).map(|_| Vec::with_capacity(ks.len())).collect();
    for (idx, &k) in ks.iter().enumerate() {
        let values = eig(&bloch(params, k)?)?.eigenvalues;
        if idx == 0 {
            bands[0].push(values[0]);
            bands[1].push(values[1]);
            continue;
        }
        let prev = [bands[0][idx - 1], bands[1][idx - 1]];
        let straight = (prev[0] - values[0]).norm() + (prev[1] - values[1]).norm();
        let swapped = (prev[0] - values[1]).norm() + (prev[1] - values[0]).norm();
        if swapped < straight {
            bands[0].push(values[1]);
            bands[1].push(values[0]);
        } else {
            bands[0].push(values[0]);
            bands[1].push(values[1]);
        }
    }
    Ok(bands)
}

/// Largest deviation of any matched Bloch band from its value at the first
/// grid point (`k = -pi`). Zero for a perfect Aharonov-Bohm cage.
pub fn flatness(params: &LatticeParams, gridsize: usize) -> Result<f64> {
    if gridsize < 3 {
        return Err(Error::ParameterDomain {
            name: "gridsize",
            reason: format!("need at least 3 k-points, got {gridsize}"),
        });
    }
    let bands = bloch_bands(params, &k_grid(gridsize))?;
    Ok(bands
        .iter()
        .flat_map(|band| band.iter().map(move |e| (e - band[0]).norm()))
        .fold(0.0, f64::max))
}

/// Closed-form flat-band energies `(+E, -E)`, `E = sqrt(J^2 + e^{2i Phi2} Gamma^2)`
/// on the principal branch. Only defined at `Phi1 = pi/2`.
pub fn band_energy_analytic(params: &LatticeParams) -> Result<(C64, C64)> {
    params.validate()?;
    if !params.is_cage_phase() {
        return Err(Error::Unsupported(format!(
            "no closed-form band energy away from Phi1 = pi/2 (got {})",
            params.phi1
        )));
    }
    let e2 = C64::new(params.j * params.j, 0.0)
        + C64::from_polar(params.gamma * params.gamma, 2.0 * params.phi2);
    let e = e2.sqrt();
    Ok((e, -e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseAxis {
    Phi1,
    Phi2,
}

/// Phase sweep over `[0, 2 pi)`.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub which: PhaseAxis,
    /// Strictly increasing phase samples.
    pub axis: Vec<f64>,
    /// Real-space spectrum (boundary from the input parameters) per sample.
    pub spectra: Vec<Vec<C64>>,
    /// Bloch-band flatness per sample.
    pub flatness: Vec<f64>,
    /// Fraction of coinciding levels per sample, see [`level_coalescence`].
    pub coalescence: Vec<f64>,
    /// Eigenvector coalescence per sample, see [`ep_defectiveness`].
    pub defectiveness: Vec<f64>,
}

/// Bloch grid used for the flatness column of a sweep.
pub const SWEEP_FLATNESS_GRID: usize = 101;

pub fn sweep_phase(params: &LatticeParams, which: PhaseAxis, count: usize) -> Result<SweepResult> {
    params.validate()?;
    if count < 2 {
        return Err(Error::ParameterDomain {
            name: "count",
            reason: format!("need at least 2 sweep samples, got {count}"),
        });
    }
    let axis: Vec<f64> = (0..count)
        .map(|i| 2.0 * PI * i as f64 / count as f64)
        .collect();
    let points: Vec<(Vec<C64>, f64, f64, f64)> = axis
        .par_iter()
        .map(|&phase| {
            let p = match which {
                PhaseAxis::Phi1 => params.with_phases(phase, params.phi2)?,
                PhaseAxis::Phi2 => params.with_phases(params.phi1, phase)?,
            };
            let spectrum = eig(&build_creutz(&p)?)?;
            let flat = flatness(&p, SWEEP_FLATNESS_GRID)?;
            let coalescence = level_coalescence(&spectrum.eigenvalues);
            Ok((
                spectrum.eigenvalues,
                flat,
                coalescence,
                spectrum.defectiveness,
            ))
        })
        .collect::<Result<_>>()?;

    let mut result = SweepResult {
        which,
        axis,
        spectra: Vec::with_capacity(count),
        flatness: Vec::with_capacity(count),
        coalescence: Vec::with_capacity(count),
        defectiveness: Vec::with_capacity(count),
    };
    for (spectrum, flat, coalescence, defect) in points {
        result.spectra.push(spectrum);
        result.flatness.push(flat);
        result.coalescence.push(coalescence);
        result.defectiveness.push(defect);
    }
    Ok(result)
}
