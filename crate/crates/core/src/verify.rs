//! Cross-check suites pairing each closed form with an independent route.
//!
//! Every suite reports the largest observed deviation and its tolerance; a
//! non-finite deviation always fails.

use std::fmt;

use crate::channels::{
    apply_product_channel, bell_param_map, dynamics_trajectory, kraus_ops, uniform_p_grid,
    ChannelKind, DEFAULT_STEPS,
};
use crate::error::Result;
use crate::measures::{
    discord_bell, discord_equals_coherence, relative_entropy_coherence,
    relative_entropy_coherence_bell, relative_entropy_coherence_x, TOL_EQ,
};
use crate::par;
use crate::sampling::{random_bell_batch, random_x_batch};
use crate::states::{
    bell_density, bell_spectrum, correlations_of, hermitian_spectrum, x_density, x_spectrum,
    BellParams,
};

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Closed-form relative entropy of coherence for Bell-diagonal states.
pub type BellClosedForm = dyn Fn(&BellParams) -> Result<f64> + Sync;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub max_dev: f64,
    pub tol: f64,
    pub cases: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_dev.is_finite() && self.max_dev <= self.tol
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} max_dev ≤ {:e}: {} (observed {:e}, cases {})",
            self.name,
            self.tol,
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_dev,
            self.cases
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteResult> {
        self.suites.iter().filter(|s| !s.passed())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

fn max_dev(devs: impl IntoIterator<Item = f64>) -> f64 {
    // NaN must survive the fold so that it is reported as a failure.
    devs.into_iter().fold(0.0, |m, d| {
        if d.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(d)
        }
    })
}

fn collect_dev(results: Vec<Result<f64>>) -> f64 {
    max_dev(results.into_iter().map(|r| r.unwrap_or(f64::NAN)))
}

/// Closed-form Bell spectrum against the Jacobi eigenvalues.
pub fn bell_spectrum_vs_oracle(cfg: &VerifyConfig) -> SuiteResult {
    let states = random_bell_batch(cfg.seed, cfg.samples);
    let devs = par::map_slice(&states, |p| {
        let numeric = hermitian_spectrum(&bell_density(p))?.values();
        let closed = bell_spectrum(p).values();
        Ok(max_dev(
            numeric.iter().zip(closed).map(|(a, b)| (a - b).abs()),
        ))
    });
    SuiteResult {
        name: "bell_spectrum_vs_oracle",
        max_dev: collect_dev(devs),
        tol: 1e-12,
        cases: cfg.samples,
    }
}

pub fn x_spectrum_vs_oracle(cfg: &VerifyConfig) -> SuiteResult {
    let states = random_x_batch(cfg.seed ^ 1, cfg.samples);
    let devs = par::map_slice(&states, |q| {
        let numeric = hermitian_spectrum(&x_density(q))?.values();
        let closed = x_spectrum(q).values();
        Ok(max_dev(
            numeric.iter().zip(closed).map(|(a, b)| (a - b).abs()),
        ))
    });
    SuiteResult {
        name: "x_spectrum_vs_oracle",
        max_dev: collect_dev(devs),
        tol: 1e-12,
        cases: cfg.samples,
    }
}

/// `closed` against `S(ρ_diag) − S(ρ)` from the eigensolver.
pub fn bell_coherence_vs_oracle_with(cfg: &VerifyConfig, closed: &BellClosedForm) -> SuiteResult {
    let states = random_bell_batch(cfg.seed ^ 2, cfg.samples);
    let devs = par::map_slice(&states, |p| {
        let generic = relative_entropy_coherence(&bell_density(p))?.value();
        Ok((closed(p)? - generic).abs())
    });
    SuiteResult {
        name: "bell_coherence_vs_oracle",
        max_dev: collect_dev(devs),
        tol: 1e-10,
        cases: cfg.samples,
    }
}

pub fn bell_coherence_vs_oracle(cfg: &VerifyConfig) -> SuiteResult {
    bell_coherence_vs_oracle_with(cfg, &|p| Ok(relative_entropy_coherence_bell(p)?.value()))
}

pub fn x_coherence_vs_oracle(cfg: &VerifyConfig) -> SuiteResult {
    let states = random_x_batch(cfg.seed ^ 3, cfg.samples);
    let devs = par::map_slice(&states, |q| {
        let generic = relative_entropy_coherence(&x_density(q))?.value();
        Ok((relative_entropy_coherence_x(q)?.value() - generic).abs())
    });
    SuiteResult {
        name: "x_coherence_vs_oracle",
        max_dev: collect_dev(devs),
        tol: 1e-10,
        cases: cfg.samples,
    }
}

pub fn kraus_completeness(_cfg: &VerifyConfig) -> SuiteResult {
    let grid = uniform_p_grid(DEFAULT_STEPS);
    let mut devs = Vec::new();
    for kind in ChannelKind::ALL {
        for &p in &grid {
            devs.push(kraus_ops(kind, p).map(|k| k.completeness_error()));
        }
    }
    SuiteResult {
        name: "kraus_completeness",
        max_dev: collect_dev(devs),
        tol: 1e-12,
        cases: 4 * grid.len(),
    }
}

/// Closed-form correlation maps against explicit Kraus application on
/// 100 random states × 4 channels × 101 values of p.
pub fn channel_map_vs_kraus(cfg: &VerifyConfig) -> SuiteResult {
    let states = random_bell_batch(cfg.seed ^ 4, 100);
    let grid = uniform_p_grid(DEFAULT_STEPS);
    let devs = par::map_slice(&states, |params| {
        let rho = bell_density(params);
        let mut worst = 0.0_f64;
        for kind in ChannelKind::ALL {
            for &p in &grid {
                let closed = bell_param_map(kind, p, params)?.as_array();
                let kraus = correlations_of(&apply_product_channel(&rho, kind, p)?).as_array();
                for (a, b) in closed.iter().zip(kraus) {
                    worst = max_dev([worst, (a - b).abs()]);
                }
            }
        }
        Ok(worst)
    });
    SuiteResult {
        name: "channel_map_vs_kraus",
        max_dev: collect_dev(devs),
        tol: 1e-12,
        cases: states.len() * 4 * grid.len(),
    }
}

/// Number of physical points of the 41³ lattice where the equality predicate
/// disagrees with `|D − C_r| ≤ TOL_EQ`.
pub fn discord_predicate_consistency(_cfg: &VerifyConfig) -> SuiteResult {
    let points = lattice_41();
    let mismatches = par::map_slice(&points, |p| -> Result<f64> {
        if !p.is_physical() {
            return Ok(0.0);
        }
        let d = discord_bell(p)?.value();
        let c = relative_entropy_coherence(&bell_density(p))?.value();
        let numeric = (d - c).abs() <= TOL_EQ;
        Ok(if numeric == discord_equals_coherence(p)? {
            0.0
        } else {
            1.0
        })
    });
    let total = mismatches
        .into_iter()
        .map(|r| r.unwrap_or(f64::NAN))
        .sum::<f64>();
    SuiteResult {
        name: "discord_predicate_consistency",
        max_dev: total,
        tol: 0.0,
        cases: points.len(),
    }
}

/// Largest increase of the relative entropy of coherence along any channel
/// trajectory of random initial states.
pub fn trajectory_monotonicity(cfg: &VerifyConfig) -> SuiteResult {
    let n = (cfg.samples / 10).max(1000);
    let states = random_bell_batch(cfg.seed ^ 5, n);
    let grid = uniform_p_grid(DEFAULT_STEPS);
    let devs = par::map_slice(&states, |params| {
        let mut worst = 0.0_f64;
        for kind in ChannelKind::ALL {
            let traj = dynamics_trajectory(params, kind, &grid)?;
            for w in traj.windows(2) {
                worst = max_dev([worst, w[1].1 - w[0].1]);
            }
        }
        Ok(worst)
    });
    SuiteResult {
        name: "trajectory_monotonicity",
        max_dev: collect_dev(devs),
        tol: 1e-9,
        cases: n * 4,
    }
}

/// The 41³ lattice with step 0.05 on `[-1, 1]³`.
pub fn lattice_41() -> Vec<BellParams> {
    let f = |i: usize| (i as f64 - 20.0) / 20.0;
    let mut out = Vec::with_capacity(41 * 41 * 41);
    for i in 0..41 {
        for j in 0..41 {
            for k in 0..41 {
                out.push(BellParams::clamped(f(i), f(j), f(k)));
            }
        }
    }
    out
}

/// Runs every suite with the shipped closed forms.
pub fn run(cfg: &VerifyConfig) -> Report {
    run_with(cfg, &|p| Ok(relative_entropy_coherence_bell(p)?.value()))
}

/// Runs every suite, substituting `bell_closed_form` for the Bell-diagonal
/// coherence closed form.
pub fn run_with(cfg: &VerifyConfig, bell_closed_form: &BellClosedForm) -> Report {
    Report {
        suites: vec![
            bell_spectrum_vs_oracle(cfg),
            x_spectrum_vs_oracle(cfg),
            bell_coherence_vs_oracle_with(cfg, bell_closed_form),
            x_coherence_vs_oracle(cfg),
            kraus_completeness(cfg),
            channel_map_vs_kraus(cfg),
            discord_predicate_consistency(cfg),
            trajectory_monotonicity(cfg),
        ],
    }
}
