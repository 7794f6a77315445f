// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant (Higham 2005). Works for defective matrices, which is what the
//! Creutz ladder becomes at its exceptional point.

use num_complex::Complex64 as C64;

use super::matrix::ComplexMatrix;
use crate::error::Result;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// 1-norm bound below which Padé(13) is accurate to unit roundoff.
const THETA13: f64 = 5.371_920_351_148_152;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn combine(terms: &[(&ComplexMatrix, f64)], n: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(n);
    for (m, coef) in terms {
        out = &out + &m.scale(real(*coef));
    }
    out
}

/// `exp(a)`.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_finite()?;
    let n = a.dim();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0));
    }
    let norm = a.norm_one();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale(real(0.5f64.powi(squarings)));

    let b = &PADE13;
    let ident = ComplexMatrix::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let u_inner = combine(&[(&a6, b[13]), (&a4, b[11]), (&a2, b[9])], n);
    let u_outer = combine(&[(&a6, b[7]), (&a4, b[5]), (&a2, b[3]), (&ident, b[1])], n);
    let u = &scaled * &(&(&a6 * &u_inner) + &u_outer);

    let v_inner = combine(&[(&a6, b[12]), (&a4, b[10]), (&a2, b[8])], n);
    let v_outer = combine(&[(&a6, b[6]), (&a4, b[4]), (&a2, b[2]), (&ident, b[0])], n);
    let v = &(&a6 * &v_inner) + &v_outer;

    let numer = &v + &u;
    let denom = &v - &u;
    let mut result = denom.lu()?.solve_matrix(&numer)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// Propagator `exp(-i H t)`.
pub fn propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    expm(&h.scale(C64::new(0.0, -t)))
}
