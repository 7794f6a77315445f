// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex eigensolver.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! QR sweeps (Wilkinson shifts, Givens rotations) on the active window until
//! the matrix is upper triangular. Right eigenvectors come from back
//! substitution on the triangular factor, mapped back with the accumulated
//! unitary transform.

use num_complex::Complex64 as C64;

use super::matrix::{vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Iteration budget per eigenvalue.
const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// Complex Schur form `A = Z T Z^H` with `T` upper triangular and `Z` unitary.
#[derive(Debug, Clone)]
pub struct Schur {
    pub t: ComplexMatrix,
    pub z: ComplexMatrix,
    pub iterations: usize,
}

/// Eigenvalues with unit-norm right eigenvectors stored as columns, in the
/// order they appear on the Schur diagonal.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<C64>,
    pub vectors: ComplexMatrix,
}

/// Reduces `a` to upper Hessenberg form, returning `(H, Q)` with `A = Q H Q^H`.
pub fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha_norm = vec_norm(&v);
        if alpha_norm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let alpha = -phase * alpha_norm;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);

        // H <- (I - 2 v v^H) H
        for j in 0..n {
            let dot: C64 = (k + 1..n)
                .zip(&v)
                .map(|(i, vi)| vi.conj() * h[(i, j)])
                .sum();
            for (i, vi) in (k + 1..n).zip(&v) {
                h[(i, j)] -= 2.0 * vi * dot;
            }
        }
        // H <- H (I - 2 v v^H), Q <- Q (I - 2 v v^H)
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: C64 = (k + 1..n).zip(&v).map(|(j, vj)| m[(i, j)] * vj).sum();
                for (j, vj) in (k + 1..n).zip(&v) {
                    m[(i, j)] -= 2.0 * dot * vj.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Givens rotation `[[c, s], [-conj(s), c]]` (c real) mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, b.conj() / b.norm());
    }
    let an = a.norm();
    let r = an.hypot(b.norm());
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

pub fn schur(a: &ComplexMatrix) -> Result<Schur> {
    a.check_finite()?;
    let n = a.dim();
    let (mut h, mut z) = hessenberg(a);
    let matrix_scale = h.norm_fro().max(f64::MIN_POSITIVE);
    let budget = MAX_ITER_PER_EIGENVALUE * n.max(1);
    let mut total = 0usize;
    let mut since_deflation = 0usize;

    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        // Locate the start of the unreduced trailing block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if local == 0.0 {
                local = matrix_scale;
            }
            if sub <= f64::EPSILON * local {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total >= budget {
            return Err(Error::NoConvergence { iterations: total });
        }
        total += 1;
        since_deflation += 1;

        let mu = if since_deflation % 11 == 10 {
            // Exceptional shift breaks symmetric stagnation cycles.
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.4 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in 0..=(k + 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = c * x + s.conj() * y;
                h[(i, k + 1)] = -s * x + c * y;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = c * x + s.conj() * y;
                z[(i, k + 1)] = -s * x + c * y;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur {
        t: h,
        z,
        iterations: total,
    })
}

/// Right eigenvectors of an upper triangular matrix by back substitution.
///
/// Near-equal diagonal entries get their denominator floored at
/// `eps * ||T||`, so defective blocks still produce (nearly parallel) unit
/// vectors instead of overflowing.
fn triangular_eigenvectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.dim();
    let small = (f64::EPSILON * t.norm_fro()).max(f64::MIN_POSITIVE);
    let mut x_all = ComplexMatrix::zeros(n);
    let mut x = vec![ZERO; n];
    for k in 0..n {
        x.iter_mut().for_each(|v| *v = ZERO);
        x[k] = C64::new(1.0, 0.0);
        let lambda = t[(k, k)];
        for i in (0..k).rev() {
            let s: C64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = C64::new(small, 0.0);
            }
            x[i] = -s / d;
            let big = x[i].norm();
            if big > 1e100 {
                x[i..=k].iter_mut().for_each(|v| *v /= big);
            }
        }
        let norm = vec_norm(&x[..=k]);
        for i in 0..=k {
            x_all[(i, k)] = x[i] / norm;
        }
    }
    x_all
}

/// Eigenvalues and unit right eigenvectors of a general complex matrix.
///
/// Exactly Hermitian input is treated as normal: the strictly upper part of
/// the Schur factor is discarded, so eigenvectors are the (orthonormal) Schur
/// vectors and eigenvalues are real.
pub fn eigen_pairs(a: &ComplexMatrix) -> Result<EigenPairs> {
    let hermitian = a.is_hermitian();
    let Schur { mut t, z, .. } = schur(a)?;
    let n = a.dim();
    if hermitian {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    t[(i, j)] = ZERO;
                }
            }
            t[(i, i)].im = 0.0;
        }
    }
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let y = triangular_eigenvectors(&t);
    let mut vectors = &z * &y;
    for k in 0..n {
        let col = vectors.column(k);
        let norm = vec_norm(&col);
        if norm > 0.0 {
            let unit: Vec<C64> = col.iter().map(|v| v / norm).collect();
            vectors.set_column(k, &unit);
        }
    }
    Ok(EigenPairs { values, vectors })
}
