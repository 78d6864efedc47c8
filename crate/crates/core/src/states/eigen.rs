//! Cyclic Jacobi eigensolver for 4×4 complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the real symmetric Jacobi rotation, so the pivot
//! is annihilated exactly. Sweeps stop once the Frobenius norm of the strict
//! upper triangle drops to [`OFF_DIAGONAL_TOL`].

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use super::pauli::Matrix4;
use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Sweep budget before reporting non-convergence.
pub const MAX_SWEEPS: usize = 100;
/// Hermiticity tolerance accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-10;

fn off_norm(a: &Matrix4) -> f64 {
    let mut sum = 0.0;
    for p in 0..4 {
        for q in (p + 1)..4 {
            sum += a[p][q].norm_sqr();
        }
    }
    sum.sqrt()
}

pub(crate) fn hermitian_deviation(a: &Matrix4) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..4 {
        for j in i..4 {
            dev = dev.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian 4×4 matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &Matrix4) -> Result<[f64; 4]> {
    let deviation = hermitian_deviation(m);
    if !deviation.is_finite() || deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    // Symmetrize so that rounding in the input cannot break the iteration.
    let mut a = *m;
    for i in 0..4 {
        a[i][i] = Complex64::new(a[i][i].re, 0.0);
        for j in (i + 1)..4 {
            let v = (a[i][j] + a[j][i].conj()) * 0.5;
            a[i][j] = v;
            a[j][i] = v.conj();
        }
    }

    let mut sweeps = 0;
    while off_norm(&a) > OFF_DIAGONAL_TOL {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off_norm(&a),
            });
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut values = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Annihilates `a[p][q]` with the unitary `U = diag(1, e^{-iφ}) · R(θ)` acting
/// on the (p, q) plane, replacing `a` by `U† a U`.
fn rotate(a: &mut Matrix4, p: usize, q: usize) {
    let apq = a[p][q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b;
    let app = a[p][p].re;
    let aqq = a[q][q].re;

    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    // a <- a U (columns p, q)
    for row in a.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * u_pp + xq * u_qp;
        row[q] = xp * u_pq + xq * u_qq;
    }
    // a <- U† a (rows p, q)
    for k in 0..4 {
        let (xp, xq) = (a[p][k], a[q][k]);
        a[p][k] = u_pp.conj() * xp + u_qp.conj() * xq;
        a[q][k] = u_pq.conj() * xp + u_qq.conj() * xq;
    }

    a[p][q] = Complex64::new(0.0, 0.0);
    a[q][p] = Complex64::new(0.0, 0.0);
    a[p][p] = Complex64::new(a[p][p].re, 0.0);
    a[q][q] = Complex64::new(a[q][q].re, 0.0);
}
