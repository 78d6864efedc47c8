//! Local decoherence channels applied identically to both qubits.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{check_range, Error, Result};
use crate::measures::relative_entropy_coherence_bell;
use crate::par;
use crate::states::pauli::{adjoint4, kron, mul4, scale2, Matrix2, Matrix4, IDENTITY, PAULIS};
use crate::states::{BellParams, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    /// Generalized amplitude damping with mixing probability fixed at 1/2;
    /// the channel parameter is the damping strength.
    GeneralizedAmplitudeDamping,
}

impl ChannelKind {
    /// Table order used for CSV columns.
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::GeneralizedAmplitudeDamping,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bf",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitPhaseFlip => "bpf",
            ChannelKind::GeneralizedAmplitudeDamping => "gad",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChannelKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown channel '{s}'")))
    }
}

/// Single-qubit Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet(Vec<Matrix2>);

impl KrausSet {
    pub fn operators(&self) -> &[Matrix2] {
        &self.0
    }

    /// Largest entry of `|Σ E_k† E_k − I|`.
    pub fn completeness_error(&self) -> f64 {
        let mut sum = [[Complex64::new(0.0, 0.0); 2]; 2];
        for e in &self.0 {
            for i in 0..2 {
                for j in 0..2 {
                    sum[i][j] += e[0][i].conj() * e[0][j] + e[1][i].conj() * e[1][j];
                }
            }
        }
        let mut err: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                err = err.max((sum[i][j] - IDENTITY[i][j]).norm());
            }
        }
        err
    }
}

fn check_p(p: f64) -> Result<()> {
    check_range("p", p, 0.0, 1.0)
}

pub fn kraus_ops(kind: ChannelKind, p: f64) -> Result<KrausSet> {
    check_p(p)?;
    let ops = match kind {
        ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => {
            let pauli = match kind {
                ChannelKind::BitFlip => &PAULIS[0],
                ChannelKind::PhaseFlip => &PAULIS[2],
                _ => &PAULIS[1],
            };
            vec![
                scale2(&IDENTITY, (1.0 - p / 2.0).sqrt()),
                scale2(pauli, (p / 2.0).sqrt()),
            ]
        }
        ChannelKind::GeneralizedAmplitudeDamping => {
            let gamma = p;
            let mix = 0.5_f64.sqrt();
            let re = |x: f64| Complex64::new(x, 0.0);
            let zero = re(0.0);
            let keep = re((1.0 - gamma).sqrt());
            let jump = re(gamma.sqrt());
            vec![
                scale2(&[[re(1.0), zero], [zero, keep]], mix),
                scale2(&[[zero, jump], [zero, zero]], mix),
                scale2(&[[keep, zero], [zero, re(1.0)]], mix),
                scale2(&[[zero, zero], [jump, zero]], mix),
            ]
        }
    };
    Ok(KrausSet(ops))
}

/// `ε(ρ) = Σ_ij (E_i⊗E_j) ρ (E_i⊗E_j)†`.
///
/// The map is linear, so it is applied to any Hermitian unit-trace operator;
/// it preserves positivity for physical inputs.
pub fn apply_product_channel(
    m: &DensityMatrix,
    kind: ChannelKind,
    p: f64,
) -> Result<DensityMatrix> {
    let kraus = kraus_ops(kind, p)?;
    let mut out: Matrix4 = [[Complex64::new(0.0, 0.0); 4]; 4];
    for a in kraus.operators() {
        for b in kraus.operators() {
            let k = kron(a, b);
            let term = mul4(&mul4(&k, m.entries()), &adjoint4(&k));
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] += term[i][j];
                }
            }
        }
    }
    DensityMatrix::new(out)
}

/// Closed-form action on the correlation triple.
pub fn bell_param_map(kind: ChannelKind, p: f64, params: &BellParams) -> Result<BellParams> {
    check_p(p)?;
    let [c1, c2, c3] = params.as_array();
    let q = 1.0 - p;
    let q2 = q * q;
    let mapped = match kind {
        ChannelKind::BitFlip => [c1, c2 * q2, c3 * q2],
        ChannelKind::PhaseFlip => [c1 * q2, c2 * q2, c3],
        ChannelKind::BitPhaseFlip => [c1 * q2, c2, c3 * q2],
        ChannelKind::GeneralizedAmplitudeDamping => [c1 * q, c2 * q, c3 * q2],
    };
    BellParams::new(mapped[0], mapped[1], mapped[2])
}

/// `n` uniformly spaced points on `[0, 1]`, endpoints exact.
pub fn uniform_p_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

pub const DEFAULT_STEPS: usize = 101;

/// `(p, C_r)` along `p_grid`, each point mapped in one shot from `params`.
pub fn dynamics_trajectory(
    params: &BellParams,
    kind: ChannelKind,
    p_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    params.ensure_physical()?;
    for &p in p_grid {
        check_p(p)?;
    }
    if p_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Unsupported(
            "p grid must be strictly increasing".into(),
        ));
    }
    par::map_slice(p_grid, |&p| {
        let mapped = bell_param_map(kind, p, params)?;
        let c = relative_entropy_coherence_bell(&mapped)?;
        Ok((p, c.value()))
    })
    .into_iter()
    .collect()
}
