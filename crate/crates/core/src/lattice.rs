// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Real-space and Bloch Hamiltonians of the generalized cross-stitch lattice
//! and the non-Hermitian Creutz ladder.
//!
//! Sites are ordered `A_1, B_1, A_2, B_2, ...`: cell `j` (1-based) owns flat
//! indices `2(j-1)` (sublattice A) and `2(j-1)+1` (sublattice B).
//!
//! Intercell hops carry the Peierls phase `Phi1`. Seen from cell `j` looking
//! forward to cell `j+1`:
//!
//! ```text
//! A_j -> A_{j+1}, B_{j+1}:  e^{-i Phi1} J/2
//! B_j -> A_{j+1}, B_{j+1}:  e^{+i Phi1} J/2
//! ```
//!
//! with Hermitian-conjugate backward hops. The rung `A_j <-> B_j` carries the
//! reciprocal (not conjugated) coupling `e^{i Phi2} Gamma` on both entries.
//! At `Phi1 = Phi2 = pi/2` the rows reproduce the discrete Schrödinger
//! equations of the ladder term by term.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Tolerance for "this phase is pi/2".
pub const PHASE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sublattice {
    A,
    B,
}

/// Position of a site: 1-based unit cell plus sublattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteIndex {
    cell: usize,
    sub: Sublattice,
}

impl SiteIndex {
    /// `cell` is 1-based and must be at least 1.
    pub fn new(cell: usize, sub: Sublattice) -> Result<Self> {
        if cell == 0 {
            return Err(Error::IndexOutOfRange {
                what: "cell",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        Ok(Self { cell, sub })
    }

    pub fn from_flat(flat: usize) -> Self {
        Self {
            cell: flat / 2 + 1,
            sub: if flat.is_multiple_of(2) {
                Sublattice::A
            } else {
                Sublattice::B
            },
        }
    }

    pub fn cell(&self) -> usize {
        self.cell
    }

    pub fn sub(&self) -> Sublattice {
        self.sub
    }

    /// Zero-based position in the state vector.
    pub fn flat(&self) -> usize {
        2 * (self.cell - 1) + if self.sub == Sublattice::A { 0 } else { 1 }
    }

    /// One-based site number, as sites are labelled in figures.
    pub fn site_number(&self) -> usize {
        self.flat() + 1
    }
}

/// Parameters of one model instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    /// Intercell coupling strength `J > 0`.
    pub j: f64,
    /// Imaginary rung coupling strength `Gamma >= 0`.
    pub gamma: f64,
    /// Intercell Peierls phase.
    pub phi1: f64,
    /// Rung phase.
    pub phi2: f64,
    /// Number of unit cells, at least 2.
    pub n: usize,
    pub boundary: Boundary,
}

impl LatticeParams {
    pub fn new(
        j: f64,
        gamma: f64,
        phi1: f64,
        phi2: f64,
        n: usize,
        boundary: Boundary,
    ) -> Result<Self> {
        let p = Self {
            j,
            gamma,
            phi1,
            phi2,
            n,
            boundary,
        };
        p.validate()?;
        Ok(p)
    }

    /// Creutz ladder at the cage phases `Phi1 = Phi2 = pi/2`.
    pub fn creutz(j: f64, gamma: f64, n: usize, boundary: Boundary) -> Result<Self> {
        Self::new(j, gamma, FRAC_PI_2, FRAC_PI_2, n, boundary)
    }

    /// Hermitian cross-stitch lattice (`Gamma = 0`) at `Phi1 = pi/2`.
    pub fn cross_stitch(j: f64, n: usize, boundary: Boundary) -> Result<Self> {
        Self::new(j, 0.0, FRAC_PI_2, FRAC_PI_2, n, boundary)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_phases(mut self, phi1: f64, phi2: f64) -> Result<Self> {
        self.phi1 = phi1;
        self.phi2 = phi2;
        self.validate()?;
        Ok(self)
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.j.is_finite() && self.j > 0.0) {
            return Err(Error::ParameterDomain {
                name: "J",
                reason: format!("must be finite and > 0, got {}", self.j),
            });
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::ParameterDomain {
                name: "Gamma",
                reason: format!("must be finite and >= 0, got {}", self.gamma),
            });
        }
        if !self.phi1.is_finite() {
            return Err(Error::ParameterDomain {
                name: "Phi1",
                reason: "must be finite".into(),
            });
        }
        if !self.phi2.is_finite() {
            return Err(Error::ParameterDomain {
                name: "Phi2",
                reason: "must be finite".into(),
            });
        }
        if self.n < 2 {
            return Err(Error::ParameterDomain {
                name: "N",
                reason: format!("need at least 2 unit cells, got {}", self.n),
            });
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        2 * self.n
    }

    /// `Phi1 = pi/2`: every band is flat.
    pub fn is_cage_phase(&self) -> bool {
        (self.phi1 - FRAC_PI_2).abs() < PHASE_TOL
    }

    /// `Phi1 = Phi2 = pi/2`: the closed-form results apply.
    pub fn is_canonical(&self) -> bool {
        self.is_cage_phase() && (self.phi2 - FRAC_PI_2).abs() < PHASE_TOL
    }

    pub(crate) fn require_canonical(&self, what: &str) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} requires Phi1 = Phi2 = pi/2 (got Phi1 = {}, Phi2 = {})",
                self.phi1, self.phi2
            )))
        }
    }
}

/// Forward hop amplitudes `(from A, from B)` into cell `j+1`.
fn forward_hops(p: &LatticeParams) -> (C64, C64) {
    let half = 0.5 * p.j;
    (
        C64::from_polar(half, -p.phi1),
        C64::from_polar(half, p.phi1),
    )
}

fn add_intercell(h: &mut ComplexMatrix, p: &LatticeParams, from_cell: usize, to_cell: usize) {
    let (from_a, from_b) = forward_hops(p);
    let (a0, b0) = (2 * from_cell, 2 * from_cell + 1);
    let (a1, b1) = (2 * to_cell, 2 * to_cell + 1);
    for (row, amp) in [(a0, from_a), (b0, from_b)] {
        for col in [a1, b1] {
            h[(row, col)] += amp;
            h[(col, row)] += amp.conj();
        }
    }
}

fn hopping_part(p: &LatticeParams) -> ComplexMatrix {
    let n = p.n;
    let mut h = ComplexMatrix::zeros(2 * n);
    for cell in 0..n - 1 {
        add_intercell(&mut h, p, cell, cell + 1);
    }
    if p.boundary == Boundary::Periodic {
        add_intercell(&mut h, p, n - 1, 0);
    }
    h
}

/// Hermitian cross-stitch lattice; `params.gamma` must be zero.
pub fn build_cross_stitch(params: &LatticeParams) -> Result<ComplexMatrix> {
    params.validate()?;
    if params.gamma != 0.0 {
        return Err(Error::ParameterDomain {
            name: "Gamma",
            reason: format!(
                "cross-stitch lattice has no rungs, got Gamma = {}",
                params.gamma
            ),
        });
    }
    Ok(hopping_part(params))
}

/// Non-Hermitian Creutz ladder: cross-stitch hops plus `e^{i Phi2} Gamma` rungs.
pub fn build_creutz(params: &LatticeParams) -> Result<ComplexMatrix> {
    params.validate()?;
    let mut h = hopping_part(params);
    if params.gamma != 0.0 {
        let rung = C64::from_polar(params.gamma, params.phi2);
        for cell in 0..params.n {
            h[(2 * cell, 2 * cell + 1)] += rung;
            h[(2 * cell + 1, 2 * cell)] += rung;
        }
    }
    Ok(h)
}

/// 2x2 Bloch Hamiltonian at crystal momentum `k`, for `psi_{X_j} = e^{i k j} u_X`.
pub fn bloch(params: &LatticeParams, k: f64) -> Result<ComplexMatrix> {
    params.validate()?;
    let j = params.j;
    let rung = C64::from_polar(params.gamma, params.phi2);
    let aa = C64::new(j * (k - params.phi1).cos(), 0.0);
    let bb = C64::new(j * (k + params.phi1).cos(), 0.0);
    let ab = rung + C64::from_polar(j * k.cos(), -params.phi1);
    let ba = rung + C64::from_polar(j * k.cos(), params.phi1);
    ComplexMatrix::from_rows(&[vec![aa, ab], vec![ba, bb]])
}

/// Quantized momenta `2 pi m / N` of an `N`-cell periodic ring, `m = 0..N`.
pub fn ring_momenta(n: usize) -> Vec<f64> {
    (0..n)
        .map(|m| 2.0 * std::f64::consts::PI * m as f64 / n as f64)
        .collect()
}

/// Per-cell block `[[i, i], [-1, 1]]` and its inverse `[[-i, -1], [-i, 1]] / 2`.
fn cell_block() -> ([[C64; 2]; 2], [[C64; 2]; 2]) {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let u = [[i, i], [-one, one]];
    let u_inv = [[-i * 0.5, -one * 0.5], [-i * 0.5, one * 0.5]];
    (u, u_inv)
}

fn block_diagonal(n: usize, block: [[C64; 2]; 2]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2 * n);
    for cell in 0..n {
        for r in 0..2 {
            for c in 0..2 {
                m[(2 * cell + r, 2 * cell + c)] = block[r][c];
            }
        }
    }
    m
}

/// Ordering of the transformed basis into dimers.
///
/// Per cell the block maps `(psi_A, psi_B)` to `(i(psi_A + psi_B), psi_B - psi_A)`.
/// The symmetric component of cell `j+1` only talks to the antisymmetric
/// component of cell `j`, so dimer `j` is placed at positions `(2j, 2j+1)` as
/// `(symmetric of cell j+1, antisymmetric of cell j)`, cyclically.
pub fn dimer_permutation(n: usize) -> Vec<usize> {
    (0..2 * n)
        .map(|m| if m % 2 == 0 { (m + 2) % (2 * n) } else { m })
        .collect()
}

fn check_square(h: &ComplexMatrix, n: usize) -> Result<()> {
    if h.dim() != 2 * n {
        return Err(Error::Shape {
            expected: 2 * n,
            actual: h.dim(),
        });
    }
    Ok(())
}

/// Similarity transform onto the decoupled-dimer lattice.
///
/// For the ladder at `Phi1 = Phi2 = pi/2` the output is block diagonal with
/// 2x2 blocks `[[+i Gamma, J], [J, -i Gamma]]` at `(2j, 2j+1)`. Under open
/// boundaries the last block holds the two uncoupled edge modes.
pub fn dimer_transform(h: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    check_square(h, n)?;
    let (u, u_inv) = cell_block();
    let forward = &(&block_diagonal(n, u) * h) * &block_diagonal(n, u_inv);
    forward.permuted(&dimer_permutation(n))
}

/// Inverse of [`dimer_transform`]. For `n = 1` this is exactly
/// `U^{-1} D U` with the 2x2 block `U`.
pub fn dimer_transform_inverse(h: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    check_square(h, n)?;
    let perm = dimer_permutation(n);
    let mut inv_perm = vec![0; perm.len()];
    for (m, &old) in perm.iter().enumerate() {
        inv_perm[old] = m;
    }
    let unpermuted = h.permuted(&inv_perm)?;
    let (u, u_inv) = cell_block();
    Ok(&(&block_diagonal(n, u_inv) * &unpermuted) * &block_diagonal(n, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eig;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn site_index_round_trip() {
        for flat in 0..14 {
            let s = SiteIndex::from_flat(flat);
            assert_eq!(s.flat(), flat);
            assert_eq!(s.site_number(), flat + 1);
        }
        let b3 = SiteIndex::new(3, Sublattice::B).unwrap();
        assert_eq!(b3.flat(), 5);
        assert!(SiteIndex::new(0, Sublattice::A).is_err());
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(LatticeParams::creutz(0.0, 0.5, 7, Boundary::Open).is_err());
        assert!(LatticeParams::creutz(1.0, -0.1, 7, Boundary::Open).is_err());
        assert!(LatticeParams::creutz(1.0, 0.5, 1, Boundary::Open).is_err());
        assert!(LatticeParams::new(1.0, 0.5, f64::NAN, 0.0, 7, Boundary::Open).is_err());
        let p = LatticeParams::creutz(1.0, 0.5, 4, Boundary::Open).unwrap();
        assert!(matches!(
            build_cross_stitch(&p),
            Err(Error::ParameterDomain { name: "Gamma", .. })
        ));
    }

    #[test]
    fn cross_stitch_two_cells() {
        let p = LatticeParams::cross_stitch(1.0, 2, Boundary::Open).unwrap();
        let h = build_cross_stitch(&p).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(h.hermiticity_defect(), 0.0);
        // B_1 -> A_2 and its conjugate
        assert!((h[(1, 2)] - c(0.0, 0.5)).norm() < 1e-15);
        assert!((h[(2, 1)] - c(0.0, -0.5)).norm() < 1e-15);
        // A_1 -> A_2, A_1 -> B_2
        assert!((h[(0, 2)] - c(0.0, -0.5)).norm() < 1e-15);
        assert!((h[(0, 3)] - c(0.0, -0.5)).norm() < 1e-15);
        // no rungs
        assert_eq!(h[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn zero_phase_is_real_symmetric() {
        let p = LatticeParams::new(1.0, 0.0, 0.0, 0.0, 2, Boundary::Open).unwrap();
        let h = build_cross_stitch(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(h[(i, j)].im.abs() < 1e-16);
                assert_eq!(h[(i, j)], h[(j, i)]);
                let v = h[(i, j)].re.abs();
                assert!(v == 0.0 || (v - 0.5).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn hermitian_periodic_cross_stitch_is_flat() {
        let p = LatticeParams::cross_stitch(1.0, 7, Boundary::Periodic).unwrap();
        let s = eig(&build_cross_stitch(&p).unwrap()).unwrap();
        let plus = s
            .eigenvalues
            .iter()
            .filter(|e| (*e - c(1.0, 0.0)).norm() < 1e-12)
            .count();
        let minus = s
            .eigenvalues
            .iter()
            .filter(|e| (*e - c(-1.0, 0.0)).norm() < 1e-12)
            .count();
        assert_eq!((plus, minus), (7, 7));
    }

    #[test]
    fn creutz_rungs_are_reciprocal_imaginary() {
        let p = LatticeParams::creutz(1.0, 0.5, 7, Boundary::Open).unwrap();
        let h = build_creutz(&p).unwrap();
        assert_eq!(h.dim(), 14);
        for cell in 0..7 {
            assert!((h[(2 * cell, 2 * cell + 1)] - c(0.0, 0.5)).norm() < 1e-16);
            assert!((h[(2 * cell + 1, 2 * cell)] - c(0.0, 0.5)).norm() < 1e-16);
        }
        assert!(h.trace().norm() == 0.0);
        let s = eig(&h).unwrap();
        let sum: C64 = s.eigenvalues.iter().sum();
        assert!(sum.norm() < 1e-12);
    }

    #[test]
    fn creutz_with_zero_gamma_equals_cross_stitch() {
        let p = LatticeParams::new(1.0, 0.0, 0.9, 2.3, 5, Boundary::Periodic).unwrap();
        assert_eq!(build_creutz(&p).unwrap(), build_cross_stitch(&p).unwrap());
    }

    #[test]
    fn rows_match_discrete_schrodinger_equations() {
        // Row of A_j: i Gamma psi_B_j - iJ/2 psi_A_{j+1} - iJ/2 psi_B_{j+1}
        //             + iJ/2 psi_A_{j-1} - iJ/2 psi_B_{j-1}
        // Row of B_j: i Gamma psi_A_j + iJ/2 psi_A_{j+1} + iJ/2 psi_B_{j+1}
        //             + iJ/2 psi_A_{j-1} - iJ/2 psi_B_{j-1}
        let (jj, g) = (1.3, 0.4);
        let p = LatticeParams::creutz(jj, g, 5, Boundary::Open).unwrap();
        let h = build_creutz(&p).unwrap();
        let i = c(0.0, 1.0);
        let cell = 2;
        let (a, b) = (2 * cell, 2 * cell + 1);
        let expect_a = [
            (b, i * g),
            (a + 2, -i * jj / 2.0),
            (b + 2, -i * jj / 2.0),
            (a - 2, i * jj / 2.0),
            (b - 2, -i * jj / 2.0),
        ];
        let expect_b = [
            (a, i * g),
            (a + 2, i * jj / 2.0),
            (b + 2, i * jj / 2.0),
            (a - 2, i * jj / 2.0),
            (b - 2, -i * jj / 2.0),
        ];
        for (row, expect) in [(a, &expect_a), (b, &expect_b)] {
            let mut nonzero = 0;
            for col in 0..h.dim() {
                let want = expect
                    .iter()
                    .find(|(cc, _)| *cc == col)
                    .map(|x| x.1)
                    .unwrap_or(c(0.0, 0.0));
                assert!((h[(row, col)] - want).norm() < 1e-15, "row {row} col {col}");
                if want != c(0.0, 0.0) {
                    nonzero += 1;
                }
            }
            assert_eq!(nonzero, 5);
        }
    }

    #[test]
    fn bloch_matches_closed_form() {
        let p = LatticeParams::creutz(1.0, 0.5, 7, Boundary::Periodic).unwrap();
        let h0 = bloch(&p, 0.0).unwrap();
        let want = [[c(0.0, 0.0), c(0.0, -0.5)], [c(0.0, 1.5), c(0.0, 0.0)]];
        for r in 0..2 {
            for s in 0..2 {
                assert!((h0[(r, s)] - want[r][s]).norm() < 1e-15);
            }
        }
        let q = LatticeParams::cross_stitch(1.0, 7, Boundary::Periodic).unwrap();
        let hq = bloch(&q, PI / 2.0).unwrap();
        assert!((hq[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((hq[(1, 1)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(hq[(0, 1)].norm() < 1e-15 && hq[(1, 0)].norm() < 1e-15);

        let k = 0.7;
        let s = eig(&bloch(&p, k).unwrap()).unwrap();
        let w = 0.75f64.sqrt();
        assert!((s.eigenvalues[0] - c(-w, 0.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1] - c(w, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn periodic_spectrum_is_union_of_bloch_spectra() {
        let p = LatticeParams::new(1.0, 0.3, 1.1, 0.4, 6, Boundary::Periodic).unwrap();
        let real_space = eig(&build_creutz(&p).unwrap()).unwrap().eigenvalues;
        let mut from_bloch = Vec::new();
        for k in ring_momenta(p.n) {
            from_bloch.extend(eig(&bloch(&p, k).unwrap()).unwrap().eigenvalues);
        }
        let mut used = vec![false; from_bloch.len()];
        for e in &real_space {
            let (idx, d) = from_bloch
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, f)| (i, (e - f).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < 1e-10, "unmatched eigenvalue {e}");
            used[idx] = true;
        }
    }

    #[test]
    fn dimer_transform_decouples_hermitian_ring() {
        let p = LatticeParams::cross_stitch(1.0, 7, Boundary::Periodic).unwrap();
        let h = build_cross_stitch(&p).unwrap();
        let d = dimer_transform(&h, 7).unwrap();
        for r in 0..14 {
            for s in 0..14 {
                if r / 2 != s / 2 {
                    assert!(d[(r, s)].norm() < 1e-12, "off-dimer entry ({r},{s})");
                }
            }
        }
        for dimer in 0..7 {
            let coupling = d[(2 * dimer, 2 * dimer + 1)];
            assert!((coupling.norm() - 1.0).abs() < 1e-12);
            assert!((d[(2 * dimer + 1, 2 * dimer)] - coupling).norm() < 1e-12);
        }
    }

    #[test]
    fn dimer_transform_carries_gain_and_loss() {
        let p = LatticeParams::creutz(1.0, 0.5, 7, Boundary::Open).unwrap();
        let d = dimer_transform(&build_creutz(&p).unwrap(), 7).unwrap();
        for dimer in 0..6 {
            assert!((d[(2 * dimer, 2 * dimer)] - c(0.0, 0.5)).norm() < 1e-12);
            assert!((d[(2 * dimer + 1, 2 * dimer + 1)] - c(0.0, -0.5)).norm() < 1e-12);
            assert!((d[(2 * dimer, 2 * dimer + 1)].norm() - 1.0).abs() < 1e-12);
        }
        // open chain: the last block holds two uncoupled edge modes
        assert!(d[(12, 13)].norm() < 1e-12);
    }

    #[test]
    fn single_block_inverse_direction() {
        let g = 0.7;
        let dm = ComplexMatrix::diag(&[c(0.0, g), c(0.0, -g)]);
        let h = dimer_transform_inverse(&dm, 1).unwrap();
        assert!(h[(0, 0)].norm() < 1e-15 && h[(1, 1)].norm() < 1e-15);
        assert!((h[(0, 1)] - c(0.0, g)).norm() < 1e-15);
        assert!((h[(1, 0)] - c(0.0, g)).norm() < 1e-15);
    }

    #[test]
    fn dimer_transform_shape_error() {
        let h = ComplexMatrix::zeros(6);
        assert!(matches!(
            dimer_transform(&h, 4),
            Err(Error::Shape {
                expected: 8,
                actual: 6
            })
        ));
    }
}
