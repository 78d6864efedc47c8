use proptest::prelude::*;
use qcoherence::channels::{uniform_p_grid, DEFAULT_STEPS};
use qcoherence::measures::{
    l1_coherence_bell, relative_entropy_coherence_bell, relative_entropy_coherence_x,
};
use qcoherence::sampling::{random_bell, random_x, rng};
use qcoherence::*;

fn physical_bell() -> impl Strategy<Value = BellParams> {
    any::<u64>().prop_map(|seed| random_bell(&mut rng(seed)))
}

fn physical_x() -> impl Strategy<Value = XParams> {
    any::<u64>().prop_map(|seed| random_x(&mut rng(seed)))
}

fn channel() -> impl Strategy<Value = ChannelKind> {
    prop::sample::select(ChannelKind::ALL.to_vec())
}

fn flip_pair(p: &BellParams, pair: usize) -> BellParams {
    let mut c = p.as_array();
    let (a, b) = [(0, 1), (0, 2), (1, 2)][pair];
    c[a] = -c[a];
    c[b] = -c[b];
    BellParams::new(c[0], c[1], c[2]).unwrap()
}

fn same_multiset(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
    // Both are sorted descending.
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bell_spectrum_matches_jacobi(p in physical_bell()) {
        let closed = bell_spectrum(&p);
        let numeric = hermitian_spectrum(&bell_density(&p)).unwrap();
        prop_assert!(same_multiset(closed.values(), numeric.values(), 1e-12));
        prop_assert!((closed.sum() - 1.0).abs() < 1e-10);
        prop_assert!((numeric.sum() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn x_spectrum_matches_jacobi(q in physical_x()) {
        let closed = x_spectrum(&q);
        let numeric = hermitian_spectrum(&x_density(&q)).unwrap();
        prop_assert!(same_multiset(closed.values(), numeric.values(), 1e-12));
        prop_assert!((closed.sum() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn x_reduces_to_bell(p in physical_bell()) {
        let q = XParams::from_bell(p, 0.0, 0.0).unwrap();
        prop_assert_eq!(x_density(&q), bell_density(&p));
        prop_assert!(same_multiset(x_spectrum(&q).values(), bell_spectrum(&p).values(), 1e-15));
    }

    #[test]
    fn sign_pair_flip_permutes_spectrum(p in physical_bell(), pair in 0usize..3) {
        let f = flip_pair(&p, pair);
        prop_assert!(same_multiset(bell_spectrum(&p).values(), bell_spectrum(&f).values(), 1e-12));
    }

    #[test]
    fn coherence_invariant_under_pair_flips(p in physical_bell(), pair in 0usize..3) {
        let f = flip_pair(&p, pair);
        let l1 = |x: &BellParams| l1_coherence(&bell_density(x)).value();
        let cr = |x: &BellParams| relative_entropy_coherence_bell(x).unwrap().value();
        prop_assert!((l1(&p) - l1(&f)).abs() <= 1e-12);
        prop_assert!((cr(&p) - cr(&f)).abs() <= 1e-12);
    }

    #[test]
    fn measures_are_nonnegative(p in physical_bell()) {
        let m = bell_density(&p);
        prop_assert!(l1_coherence(&m).value() >= 0.0);
        prop_assert!(trace_norm_coherence_x(&m).unwrap().value() >= 0.0);
        prop_assert!(relative_entropy_coherence(&m).unwrap().value() >= 0.0);
        prop_assert!(discord_bell(&p).unwrap().value() >= 0.0);
        prop_assert!(relative_entropy_coherence(&m).unwrap().value() <= 1.0 + 1e-12);
    }

    #[test]
    fn discord_never_exceeds_coherence(p in physical_bell()) {
        let d = discord_bell(&p).unwrap().value();
        let c = relative_entropy_coherence_bell(&p).unwrap().value();
        prop_assert!(d <= c + 1e-12);
    }

    #[test]
    fn closed_forms_match_generic_route(p in physical_bell(), q in physical_x()) {
        let a = relative_entropy_coherence_bell(&p).unwrap().value();
        let b = relative_entropy_coherence(&bell_density(&p)).unwrap().value();
        prop_assert!((a - b).abs() <= 1e-10);
        let a = relative_entropy_coherence_x(&q).unwrap().value();
        let b = relative_entropy_coherence(&x_density(&q)).unwrap().value();
        prop_assert!((a - b).abs() <= 1e-10);
        prop_assert!((l1_coherence_bell(&p).value() - l1_coherence(&bell_density(&p)).value()).abs() <= 1e-12);
    }

    #[test]
    fn zero_coherence_iff_on_axis(p in physical_bell()) {
        let l1 = l1_coherence(&bell_density(&p)).value();
        let cr = relative_entropy_coherence_bell(&p).unwrap().value();
        let off_axis = p.c1().abs().max(p.c2().abs());
        prop_assert_eq!(l1 == 0.0, off_axis == 0.0);
        prop_assert_eq!(cr == 0.0, off_axis == 0.0);
    }

    #[test]
    fn channels_preserve_states(p in physical_bell(), kind in channel(), prob in 0.0f64..=1.0) {
        let out = apply_product_channel(&bell_density(&p), kind, prob).unwrap();
        let tr: f64 = out.diagonal().iter().sum();
        prop_assert!((tr - 1.0).abs() < 1e-12);
        prop_assert!(hermitian_spectrum(&out).unwrap().min() >= -1e-12);
        let mapped = bell_param_map(kind, prob, &p).unwrap();
        let via_kraus = correlations_of(&out);
        for (a, b) in mapped.as_array().iter().zip(via_kraus.as_array()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        // Output stays Bell-diagonal.
        prop_assert!(out.x_shape_violation().map_or(0.0, |v| v.2) < 1e-14);
        prop_assert!((out.get(0, 0) - out.get(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn trajectories_are_monotone(p in physical_bell(), kind in channel()) {
        let traj = dynamics_trajectory(&p, kind, &uniform_p_grid(DEFAULT_STEPS)).unwrap();
        for w in traj.windows(2) {
            prop_assert!(w[1].1 <= w[0].1 + 1e-9);
        }
        let end = traj.last().unwrap().1;
        let cr = |c1, c2, c3| {
            relative_entropy_coherence_bell(&BellParams::new(c1, c2, c3).unwrap()).unwrap().value()
        };
        match kind {
            ChannelKind::PhaseFlip | ChannelKind::GeneralizedAmplitudeDamping => prop_assert_eq!(end, 0.0),
            ChannelKind::BitFlip => prop_assert!((end - cr(p.c1(), 0.0, 0.0)).abs() < 1e-12),
            ChannelKind::BitPhaseFlip => prop_assert!((end - cr(0.0, p.c2(), 0.0)).abs() < 1e-12),
        }
    }
}
