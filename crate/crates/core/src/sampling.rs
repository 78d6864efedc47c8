//! Seeded random physical states for sweeps and property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::states::{BellParams, XParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the Bell tetrahedron: the spectrum is drawn uniformly from
/// the probability simplex and mapped back to correlations.
pub fn random_bell<R: Rng + ?Sized>(rng: &mut R) -> BellParams {
    let e: [f64; 4] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    let total: f64 = e.iter().sum();
    let [a, b, c, d] = e.map(|x| x / total);
    // a..d are the eigenvalues with signs (−−−), (−++), (+−+), (++−).
    BellParams::clamped(c + d - a - b, b + d - a - c, b + c - a - d)
}

/// Rejection sample of a physical X state, uniform over the valid region of
/// `[-1, 1]⁵`.
pub fn random_x<R: Rng + ?Sized>(rng: &mut R) -> XParams {
    loop {
        let v: [f64; 5] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        if let Ok(q) = XParams::new(v[0], v[1], v[2], v[3], v[4]) {
            if q.is_physical() {
                return q;
            }
        }
    }
}

pub fn random_bell_batch(seed: u64, n: usize) -> Vec<BellParams> {
    let mut r = rng(seed);
    (0..n).map(|_| random_bell(&mut r)).collect()
}

pub fn random_x_batch(seed: u64, n: usize) -> Vec<XParams> {
    let mut r = rng(seed);
    (0..n).map(|_| random_x(&mut r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::bell_spectrum;

    #[test]
    fn bell_samples_are_physical_and_spread() {
        let batch = random_bell_batch(7, 2000);
        assert!(batch.iter().all(|p| p.is_physical()));
        let mean: f64 = batch.iter().map(|p| p.c1()).sum::<f64>() / 2000.0;
        assert!(mean.abs() < 0.05);
        // Spectrum reproduces the drawn simplex point.
        for p in &batch[..10] {
            assert!((bell_spectrum(p).sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn x_samples_are_physical() {
        assert!(random_x_batch(3, 500).iter().all(|q| q.is_physical()));
    }

    #[test]
    fn batches_are_reproducible() {
        assert_eq!(random_bell_batch(11, 50), random_bell_batch(11, 50));
    }
}
