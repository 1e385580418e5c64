use molnoise::stable::*;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = StableParams> {
    (-5.0f64..5.0, 0.01f64..10.0, 0.05f64..=2.0, -1.0f64..=1.0)
        .prop_map(|(mu, c, alpha, beta)| StableParams::new(mu, c, alpha, beta).unwrap())
}

fn half_params() -> impl Strategy<Value = StableParams> {
    (-5.0f64..5.0, 0.01f64..10.0, -1.0f64..=1.0)
        .prop_map(|(mu, c, beta)| StableParams::new(mu, c, 0.5, beta).unwrap())
}

proptest! {
    #[test]
    fn cf_is_bounded_and_hermitian(p in params(), t in -100.0f64..100.0) {
        let a = cf_stable(t, &p);
        let b = cf_stable(-t, &p);
        prop_assert!(a.norm() <= 1.0 + 1e-15);
        prop_assert!((a - b.conj()).norm() <= 1e-15);
    }

    #[test]
    fn half_density_is_finite_and_nonnegative(x in -1e6f64..1e6, beta in -1.0f64..=1.0) {
        let f = std_half_pdf(x, beta).unwrap();
        prop_assert!(f.is_finite() && f >= 0.0);
        prop_assert!(f <= 2.0 / std::f64::consts::PI + 1e-15);
    }

    #[test]
    fn half_cdf_is_monotone(x in -200.0f64..200.0, dx in 0.0f64..5.0, beta in -1.0f64..=1.0) {
        let a = std_half_cdf(x, beta).unwrap();
        let b = std_half_cdf(x + dx, beta).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b >= a - 1e-15, "{} > {}", a, b);
        let s = std_half_sf(x, beta).unwrap();
        prop_assert!((a + s - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn standardization_round_trips(p in half_params(), x in -1e3f64..1e3) {
        let (s, map) = standardize(&p).unwrap();
        prop_assert_eq!((s.mu, s.c), (0.0, 1.0));
        let back = map.inverse(map.forward(x));
        prop_assert!((back - x).abs() <= 1e-12 * (1.0 + x.abs()));
        let direct = pdf(x, &p).unwrap();
        let via = std_half_pdf((x - p.mu) / p.c, p.beta).unwrap() / p.c;
        prop_assert!((direct - via).abs() <= 1e-12 * via);
    }

    #[test]
    fn tail_formulas_stay_in_unit_interval(x in 1e-9f64..1e12, beta in -1.0f64..=1.0) {
        let s = tail_stable_half(x, beta).unwrap();
        let g = tail_gaussian(x).unwrap();
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert!((0.0..=1.0).contains(&g));
    }
}
