//! Two-qubit Bell-diagonal and X states in the computational basis.
//!
//! A Bell-diagonal state is `(I⊗I + Σ c_i σ_i⊗σ_i) / 4`. The X states handled
//! here add Bloch vectors along z on both qubits, `r σ3⊗I + s I⊗σ3`. Both
//! families only populate the diagonal and the anti-diagonal, so their spectra
//! split into an outer block on {|00⟩, |11⟩} and an inner block on
//! {|01⟩, |10⟩}, each solved in closed form below. The Jacobi solver in
//! [`eigen`] provides the independent numeric route.

pub mod eigen;
pub mod pauli;

use num_complex::Complex64;

use crate::error::{check_range, Error, Result};
use pauli::{kron, trace4, Matrix4, PAULIS};

pub use eigen::hermitian_eigenvalues;

/// Slack allowed below zero for eigenvalues when deciding physicality.
pub const TOL_PSD: f64 = 1e-12;
/// Tolerance on Hermiticity and unit trace for [`DensityMatrix`].
pub const TOL_MATRIX: f64 = 1e-12;

/// Correlation triple `(c1, c2, c3)` of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellParams {
    c: [f64; 3],
}

impl BellParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        check_range("c1", c1, -1.0, 1.0)?;
        check_range("c2", c2, -1.0, 1.0)?;
        check_range("c3", c3, -1.0, 1.0)?;
        Ok(Self { c: [c1, c2, c3] })
    }

    /// Builds from values that may exceed `[-1, 1]` by rounding noise.
    pub(crate) fn clamped(c1: f64, c2: f64, c3: f64) -> Self {
        Self {
            c: [
                c1.clamp(-1.0, 1.0),
                c2.clamp(-1.0, 1.0),
                c3.clamp(-1.0, 1.0),
            ],
        }
    }

    pub fn c1(&self) -> f64 {
        self.c[0]
    }
    pub fn c2(&self) -> f64 {
        self.c[1]
    }
    pub fn c3(&self) -> f64 {
        self.c[2]
    }
    pub fn as_array(&self) -> [f64; 3] {
        self.c
    }

    /// Largest of `|c1|, |c2|, |c3|`.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_physical(&self) -> bool {
        bell_spectrum(self).is_physical()
    }

    /// Fails with the most negative eigenvalue if the state is not PSD.
    pub fn ensure_physical(&self) -> Result<()> {
        bell_spectrum(self).ensure_physical()
    }
}

/// `(r, s, c1, c2, c3)` for X states with z-aligned Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XParams {
    pub(crate) r: f64,
    pub(crate) s: f64,
    pub(crate) bell: BellParams,
}

impl XParams {
    pub fn new(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> Result<Self> {
        check_range("r", r, -1.0, 1.0)?;
        check_range("s", s, -1.0, 1.0)?;
        Ok(Self {
            r,
            s,
            bell: BellParams::new(c1, c2, c3)?,
        })
    }

    pub fn from_bell(bell: BellParams, r: f64, s: f64) -> Result<Self> {
        check_range("r", r, -1.0, 1.0)?;
        check_range("s", s, -1.0, 1.0)?;
        Ok(Self { r, s, bell })
    }

    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn bell(&self) -> BellParams {
        self.bell
    }

    pub fn is_physical(&self) -> bool {
        x_spectrum(self).is_physical()
    }

    pub fn ensure_physical(&self) -> Result<()> {
        x_spectrum(self).ensure_physical()
    }
}

/// Four eigenvalues sorted in descending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    values: [f64; 4],
}

impl Spectrum {
    pub fn new(mut values: [f64; 4]) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> [f64; 4] {
        self.values
    }

    pub fn min(&self) -> f64 {
        self.values[3]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn is_physical(&self) -> bool {
        self.min() >= -TOL_PSD
    }

    pub fn ensure_physical(&self) -> Result<()> {
        if self.is_physical() {
            Ok(())
        } else {
            Err(Error::NotPositive {
                eigenvalue: self.min(),
                tol: TOL_PSD,
            })
        }
    }
}

/// Hermitian, unit-trace 4×4 operator in the computational basis.
///
/// Positivity is not part of the type: [`bell_density`] accepts every
/// correlation triple in `[-1, 1]³`. Use [`DensityMatrix::ensure_physical`]
/// where a state is required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix4,
}

impl DensityMatrix {
    pub fn new(entries: Matrix4) -> Result<Self> {
        let deviation = eigen::hermitian_deviation(&entries);
        if !deviation.is_finite() || deviation > TOL_MATRIX {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = trace4(&entries).re;
        if (trace - 1.0).abs() > TOL_MATRIX {
            return Err(Error::BadTrace { trace });
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_trusted(entries: Matrix4) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn diagonal(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.entries[i][i].re)
    }

    pub fn maximally_mixed() -> Self {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        Self { entries: m }
    }

    pub fn is_physical(&self) -> bool {
        hermitian_spectrum(self).is_ok_and(|s| s.is_physical())
    }

    pub fn ensure_physical(&self) -> Result<()> {
        hermitian_spectrum(self)?.ensure_physical()
    }

    /// Largest magnitude outside the diagonal and anti-diagonal.
    pub fn x_shape_violation(&self) -> Option<(usize, usize, f64)> {
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..4 {
            for j in 0..4 {
                if i == j || i + j == 3 {
                    continue;
                }
                let mag = self.entries[i][j].norm();
                if worst.is_none_or(|(_, _, w)| mag > w) {
                    worst = Some((i, j, mag));
                }
            }
        }
        worst
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Density matrix of the Bell-diagonal state with correlations `p`.
pub fn bell_density(p: &BellParams) -> DensityMatrix {
    let [c1, c2, c3] = p.c;
    let zero = real(0.0);
    let hi = real((1.0 + c3) / 4.0);
    let lo = real((1.0 - c3) / 4.0);
    let outer = real((c1 - c2) / 4.0);
    let inner = real((c1 + c2) / 4.0);
    DensityMatrix::from_trusted([
        [hi, zero, zero, outer],
        [zero, lo, inner, zero],
        [zero, inner, lo, zero],
        [outer, zero, zero, hi],
    ])
}

/// Density matrix of the X state `q`. With `r = s = 0` the entries are
/// bitwise identical to [`bell_density`].
pub fn x_density(q: &XParams) -> DensityMatrix {
    let [c1, c2, c3] = q.bell.c;
    let (r, s) = (q.r, q.s);
    let zero = real(0.0);
    let outer = real((c1 - c2) / 4.0);
    let inner = real((c1 + c2) / 4.0);
    DensityMatrix::from_trusted([
        [real((1.0 + c3 + (r + s)) / 4.0), zero, zero, outer],
        [zero, real((1.0 - c3 + (r - s)) / 4.0), inner, zero],
        [zero, inner, real((1.0 - c3 - (r - s)) / 4.0), zero],
        [outer, zero, zero, real((1.0 + c3 - (r + s)) / 4.0)],
    ])
}

/// Closed-form spectrum of a Bell-diagonal state:
/// `{(1−c1−c2−c3), (1−c1+c2+c3), (1+c1−c2+c3), (1+c1+c2−c3)} / 4`.
pub fn bell_spectrum(p: &BellParams) -> Spectrum {
    let [c1, c2, c3] = p.c;
    Spectrum::new([
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ])
}

/// Closed-form X-state spectrum from the two 2×2 blocks:
/// outer `(1+c3 ± √((r+s)²+(c1−c2)²))/4`, inner `(1−c3 ± √((r−s)²+(c1+c2)²))/4`.
pub fn x_spectrum(q: &XParams) -> Spectrum {
    let [c1, c2, c3] = q.bell.c;
    let outer = (q.r + q.s).hypot(c1 - c2);
    let inner = (q.r - q.s).hypot(c1 + c2);
    Spectrum::new([
        (1.0 + c3 + outer) / 4.0,
        (1.0 + c3 - outer) / 4.0,
        (1.0 - c3 + inner) / 4.0,
        (1.0 - c3 - inner) / 4.0,
    ])
}

/// Numeric spectrum via the Jacobi eigensolver.
pub fn hermitian_spectrum(m: &DensityMatrix) -> Result<Spectrum> {
    hermitian_eigenvalues(&m.entries).map(Spectrum::new)
}

/// `−Σ λ log2 λ` in bits, with `0 · log 0 = 0`. Values in `[−TOL_PSD, 0)` are
/// treated as zero.
pub fn von_neumann_entropy(s: &Spectrum) -> Result<f64> {
    s.ensure_physical()?;
    Ok(s.values.iter().map(|&l| -xlog2x(l)).sum())
}

/// `x log2 x` with the `0 log 0 = 0` convention; negative inputs count as 0.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `c_i = Tr(m · σ_i⊗σ_i)`, the correlation triple of the Bell-diagonal
/// projection of `m`.
pub fn correlations_of(m: &DensityMatrix) -> BellParams {
    let c: [f64; 3] = std::array::from_fn(|i| {
        let ss = kron(&PAULIS[i], &PAULIS[i]);
        let mut tr = Complex64::new(0.0, 0.0);
        for (a, row) in m.entries.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                tr += v * ss[b][a];
            }
        }
        tr.re
    });
    BellParams::clamped(c[0], c[1], c[2])
}
