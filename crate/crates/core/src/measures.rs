//! Coherence quantifiers and quantum discord.
//!
//! Every entropy is in bits. The generic routes work on any [`DensityMatrix`]
//! and go through the Jacobi eigensolver; the `_bell` and `_x` variants are
//! the closed forms for the block-structured families.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::states::{
    hermitian_spectrum, von_neumann_entropy, xlog2x, BellParams, DensityMatrix, Spectrum, XParams,
};

/// Tolerance of the discord/coherence equality predicate.
pub const TOL_EQ: f64 = 1e-9;
/// Negative results down to this size are reported as zero.
pub const TOL_NEGATIVE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    L1,
    TraceNorm,
    RelativeEntropy,
    Discord,
}

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::L1 => "l1",
            MeasureKind::TraceNorm => "trace",
            MeasureKind::RelativeEntropy => "rel-ent",
            MeasureKind::Discord => "discord",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(MeasureKind::L1),
            "trace" => Ok(MeasureKind::TraceNorm),
            "rel-ent" => Ok(MeasureKind::RelativeEntropy),
            "discord" => Ok(MeasureKind::Discord),
            other => Err(Error::Unsupported(format!("unknown measure '{other}'"))),
        }
    }
}

/// Nonnegative measure value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MeasureValue(f64);

impl MeasureValue {
    /// Clamps rounding-level negatives to zero. Larger negatives are kept so
    /// that callers asserting nonnegativity can still see them.
    pub fn new(value: f64) -> Self {
        if (-TOL_NEGATIVE..0.0).contains(&value) {
            MeasureValue(0.0)
        } else {
            MeasureValue(value)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<MeasureValue> for f64 {
    fn from(v: MeasureValue) -> f64 {
        v.0
    }
}

/// `Σ_{i≠j} |ρ_ij|`.
pub fn l1_coherence(m: &DensityMatrix) -> MeasureValue {
    let e = m.entries();
    let mut sum = 0.0;
    for (i, row) in e.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                sum += v.norm();
            }
        }
    }
    MeasureValue::new(sum)
}

/// Closed form `(|c1−c2| + |c1+c2|) / 2` for Bell-diagonal states. The X-state
/// Bloch terms sit on the diagonal, so the same value applies to X states.
pub fn l1_coherence_bell(p: &BellParams) -> MeasureValue {
    MeasureValue::new(((p.c1() - p.c2()).abs() + (p.c1() + p.c2()).abs()) / 2.0)
}

/// Trace-norm coherence, which coincides with the l1 norm on X states.
pub fn trace_norm_coherence_x(m: &DensityMatrix) -> Result<MeasureValue> {
    if let Some((row, col, magnitude)) = m.x_shape_violation() {
        if magnitude > 1e-12 {
            return Err(Error::NotXShape {
                row,
                col,
                magnitude,
            });
        }
    }
    Ok(l1_coherence(m))
}

/// `S(ρ_diag) − S(ρ)` via the Jacobi eigensolver.
pub fn relative_entropy_coherence(m: &DensityMatrix) -> Result<MeasureValue> {
    let spectrum = hermitian_spectrum(m)?;
    spectrum.ensure_physical()?;
    let dephased = Spectrum::new(m.diagonal());
    let value = von_neumann_entropy(&dephased)? - von_neumann_entropy(&spectrum)?;
    Ok(MeasureValue::new(value))
}

/// Entropy drop of one 2×2 block `[[d1, b], [b*, d2]] / 4` when its
/// off-diagonal element is removed: `Σ η(λ) − Σ η(d)` with `η(x) = x log2 x`,
/// `λ = (d1 + d2 ± √((d1 − d2)² + 4|b|²)) / 8`.
///
/// `half_sum = (d1 + d2) / 2` and `radius = √(((d1 − d2)/2)² + |b|²)` are
/// passed in so that `radius == |d1 − d2| / 2` reproduces `d` bitwise and the
/// result is exactly zero for diagonal blocks.
fn block_gap(half_sum: f64, radius: f64, d1: f64, d2: f64) -> f64 {
    let eig = xlog2x((half_sum + radius) / 4.0) + xlog2x((half_sum - radius) / 4.0);
    let diag = xlog2x(d1 / 4.0) + xlog2x(d2 / 4.0);
    eig - diag
}

/// Closed-form relative entropy of coherence for Bell-diagonal states.
pub fn relative_entropy_coherence_bell(p: &BellParams) -> Result<MeasureValue> {
    p.ensure_physical()?;
    Ok(MeasureValue::new(bell_coherence_gap(p)))
}

/// Closed form without the physicality check.
pub(crate) fn bell_coherence_gap(p: &BellParams) -> f64 {
    let [c1, c2, c3] = p.as_array();
    let hi = 1.0 + c3;
    let lo = 1.0 - c3;
    block_gap(hi, (c1 - c2).abs(), hi, hi) + block_gap(lo, (c1 + c2).abs(), lo, lo)
}

/// Closed-form relative entropy of coherence for X states.
pub fn relative_entropy_coherence_x(q: &XParams) -> Result<MeasureValue> {
    q.ensure_physical()?;
    let [c1, c2, c3] = q.bell().as_array();
    let (r, s) = (q.r(), q.s());
    let outer = block_gap(
        1.0 + c3,
        (r + s).hypot(c1 - c2),
        1.0 + c3 + (r + s),
        1.0 + c3 - (r + s),
    );
    let inner = block_gap(
        1.0 - c3,
        (r - s).hypot(c1 + c2),
        1.0 - c3 + (r - s),
        1.0 - c3 - (r - s),
    );
    Ok(MeasureValue::new(outer + inner))
}

/// `(1+x)/2 · log2(1+x) + (1−x)/2 · log2(1−x)`, even in `x`.
fn binary_term(x: f64) -> f64 {
    let x = x.abs();
    0.5 * (xlog2x(1.0 + x) + xlog2x(1.0 - x))
}

/// Quantum discord of a Bell-diagonal state,
/// `2 + Σ λ log2 λ − (1+c)/2 log2(1+c) − (1−c)/2 log2(1−c)` with
/// `c = max |c_i|`.
///
/// Evaluated as `C_r + t(|c3|) − t(c)` where `t` is the binary term above;
/// this is algebraically the same expression and makes the coincidence with
/// the relative entropy of coherence exact when `|c3|` is the maximum.
pub fn discord_bell(p: &BellParams) -> Result<MeasureValue> {
    p.ensure_physical()?;
    Ok(MeasureValue::new(discord_gap(p)))
}

pub(crate) fn discord_gap(p: &BellParams) -> f64 {
    bell_coherence_gap(p) + binary_term(p.c3()) - binary_term(p.max_abs())
}

/// Whether discord equals the relative entropy of coherence, i.e. whether
/// `|c3|` attains `max{|c1|, |c2|, |c3|}` (up to [`TOL_EQ`]).
pub fn discord_equals_coherence(p: &BellParams) -> Result<bool> {
    p.ensure_physical()?;
    let c3 = p.c3().abs();
    Ok(c3 >= p.c1().abs() - TOL_EQ && c3 >= p.c2().abs() - TOL_EQ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_density, x_density};

    fn bell(c1: f64, c2: f64, c3: f64) -> BellParams {
        BellParams::new(c1, c2, c3).unwrap()
    }

    // Independent evaluation: 2 − S(0.375, 0.375, 0.125, 0.125).
    fn oracle_half_c1() -> f64 {
        let h: f64 = [0.375_f64, 0.375, 0.125, 0.125]
            .iter()
            .map(|&x| -x * x.log2())
            .sum();
        2.0 - h
    }

    #[test]
    fn l1_examples() {
        assert_eq!(
            l1_coherence(&bell_density(&bell(0.0, 0.0, 0.7))).value(),
            0.0
        );
        assert_eq!(
            l1_coherence(&bell_density(&bell(1.0, -1.0, 1.0))).value(),
            1.0
        );
        let v = l1_coherence(&bell_density(&bell(0.5, 0.3, 0.0))).value();
        assert!((v - 0.5).abs() < 1e-12);
        assert!((l1_coherence_bell(&bell(0.5, 0.3, 0.0)).value() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trace_norm_examples() {
        let v = trace_norm_coherence_x(&bell_density(&bell(0.5, 0.3, 0.0))).unwrap();
        assert!((v.value() - 0.5).abs() < 1e-12);
        assert_eq!(
            trace_norm_coherence_x(&bell_density(&bell(0.0, 0.0, 0.2)))
                .unwrap()
                .value(),
            0.0
        );
        let m = x_density(&XParams::new(0.5, 0.5, 0.4, 0.2, 0.1).unwrap());
        // |0.2/4|·2 + |0.6/4|·2
        let expected = 2.0 * 0.05 + 2.0 * 0.15;
        assert!((trace_norm_coherence_x(&m).unwrap().value() - expected).abs() < 1e-15);
        assert_eq!(trace_norm_coherence_x(&m).unwrap(), l1_coherence(&m));
    }

    #[test]
    fn trace_norm_rejects_non_x() {
        let mut e = *DensityMatrix::maximally_mixed().entries();
        e[0][1] = num_complex::Complex64::new(0.1, 0.0);
        e[1][0] = num_complex::Complex64::new(0.1, 0.0);
        let m = DensityMatrix::new(e).unwrap();
        assert!(matches!(
            trace_norm_coherence_x(&m),
            Err(Error::NotXShape { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn relative_entropy_examples() {
        assert_eq!(
            relative_entropy_coherence(&bell_density(&bell(0.0, 0.0, 0.5)))
                .unwrap()
                .value(),
            0.0
        );
        let v = relative_entropy_coherence(&bell_density(&bell(1.0, -1.0, 1.0))).unwrap();
        assert!((v.value() - 1.0).abs() < 1e-12);
        let v = relative_entropy_coherence(&bell_density(&bell(0.5, 0.0, 0.0))).unwrap();
        assert!((v.value() - oracle_half_c1()).abs() < 1e-12);
        assert!((v.value() - 0.18872).abs() < 1e-5);
        let v = relative_entropy_coherence_bell(&bell(0.5, 0.0, 0.0)).unwrap();
        assert!((v.value() - oracle_half_c1()).abs() < 1e-14);
    }

    #[test]
    fn relative_entropy_rejects_unphysical() {
        assert!(relative_entropy_coherence(&bell_density(&bell(0.9, 0.9, 0.0))).is_err());
        assert!(relative_entropy_coherence_bell(&bell(0.9, 0.9, 0.0)).is_err());
    }

    #[test]
    fn closed_form_zero_is_exact_on_axis() {
        for k in -10..=10 {
            let c3 = k as f64 / 10.0;
            assert_eq!(
                relative_entropy_coherence_bell(&bell(0.0, 0.0, c3))
                    .unwrap()
                    .value(),
                0.0
            );
            assert_eq!(discord_bell(&bell(0.0, 0.0, c3)).unwrap().value(), 0.0);
        }
    }

    #[test]
    fn x_closed_form_matches_generic() {
        let q = XParams::new(0.2, 0.1, 0.4, 0.3, 0.5).unwrap();
        if q.is_physical() {
            let a = relative_entropy_coherence_x(&q).unwrap().value();
            let b = relative_entropy_coherence(&x_density(&q)).unwrap().value();
            assert!((a - b).abs() < 1e-10);
        }
        let q = XParams::new(0.1, 0.1, 0.3, 0.2, 0.1).unwrap();
        let a = relative_entropy_coherence_x(&q).unwrap().value();
        let b = relative_entropy_coherence(&x_density(&q)).unwrap().value();
        assert!(a > 0.0);
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn discord_examples() {
        assert_eq!(discord_bell(&bell(0.0, 0.0, 0.9)).unwrap().value(), 0.0);
        assert_eq!(discord_bell(&bell(0.0, 0.0, 0.0)).unwrap().value(), 0.0);
        let p = bell(0.1, 0.1, 0.5);
        let d = discord_bell(&p).unwrap().value();
        let c = relative_entropy_coherence(&bell_density(&p))
            .unwrap()
            .value();
        assert!((d - c).abs() < 1e-12);
        // Bell vertex: one bit of discord.
        assert!((discord_bell(&bell(1.0, -1.0, 1.0)).unwrap().value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discord_below_coherence_off_region() {
        let p = bell(0.5, 0.1, 0.1);
        let d = discord_bell(&p).unwrap().value();
        let c = relative_entropy_coherence_bell(&p).unwrap().value();
        assert!(c - d > 1e-3);
        assert!(d > 0.0);
    }

    #[test]
    fn equality_predicate_examples() {
        assert!(discord_equals_coherence(&bell(0.1, 0.1, 0.5)).unwrap());
        assert!(discord_equals_coherence(&bell(0.0, 0.0, 0.0)).unwrap());
        assert!(!discord_equals_coherence(&bell(0.5, 0.1, 0.1)).unwrap());

        // |c3| ties the maximum while c3 < 0: both sides agree numerically,
        // so the predicate holds.
        let p = bell(-0.5, -0.5, -0.5);
        let d = discord_bell(&p).unwrap().value();
        let c = relative_entropy_coherence(&bell_density(&p))
            .unwrap()
            .value();
        assert!((d - c).abs() <= TOL_EQ);
        assert!(discord_equals_coherence(&p).unwrap());
        assert!(discord_equals_coherence(&bell(0.9, 0.9, 0.0)).is_err());
    }

    #[test]
    fn measure_kind_parsing() {
        for k in [
            MeasureKind::L1,
            MeasureKind::TraceNorm,
            MeasureKind::RelativeEntropy,
            MeasureKind::Discord,
        ] {
            assert_eq!(k.name().parse::<MeasureKind>().unwrap(), k);
        }
        assert!("tsallis".parse::<MeasureKind>().is_err());
    }
}
