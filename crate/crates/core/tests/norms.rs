use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiflat::norms::{
    mz_discrete_mean, mz_ratio_experiment, norm_auto, norm_exact_even, norm_sampled, sup_norm_estimate, NormMethod,
};
use semiflat::polys::{build_rudin_shapiro, CoeffPoly};

fn random_pm1(rng: &mut ChaCha8Rng, max_deg: usize) -> CoeffPoly {
    let deg = rng.random_range(1..=max_deg);
    let signs: Vec<i8> = (0..=deg).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    CoeffPoly::from_signs(&signs)
}

#[test]
fn sampled_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = random_pm1(&mut rng, 256);
        for two_m in [2u32, 4, 6] {
            let exact = norm_exact_even(&p, two_m).unwrap().value;
            let sampled = norm_sampled(&p, two_m as f64, 1e-12).unwrap().value;
            assert!((sampled - exact).abs() / exact < 1e-7, "deg {} 2m {two_m}", p.degree());
        }
    }
}

#[test]
fn exact_quadrature_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let p = random_pm1(&mut rng, 256);
        for m in [1u32, 2, 3] {
            let exact = norm_exact_even(&p, 2 * m).unwrap().value.powi(2 * m as i32);
            for extra in [1usize, 7] {
                let n = 2 * m as usize * p.degree() as usize + extra;
                let mean = mz_discrete_mean(&p, 2.0 * m as f64, n).unwrap();
                assert!((mean - exact).abs() / exact < 1e-10);
            }
        }
    }
}

#[test]
fn known_norms() {
    // 1 + z: ‖·‖₄⁴ = 6.
    let p = CoeffPoly::from_real(&[1.0, 1.0]);
    assert!((norm_exact_even(&p, 4).unwrap().value - 6f64.powf(0.25)).abs() < 1e-15);
    // ‖1 + z‖₁ = 4/π.
    let v = norm_sampled(&p, 1.0, 1e-10).unwrap().value;
    assert!((v - 4.0 / std::f64::consts::PI).abs() < 1e-8);
    let one = CoeffPoly::from_real(&[1.0]);
    for a in [0.5, 1.0, 2.0, 3.3, 4.0] {
        assert!((norm_auto(&one, a, 1e-10).unwrap().value - 1.0).abs() < 1e-14);
    }
    assert_eq!(norm_auto(&p, 6.0, 1e-10).unwrap().method, NormMethod::ExactEven);
    assert_eq!(norm_auto(&p, 5.0, 1e-10).unwrap().method, NormMethod::Sampled);
}

#[test]
fn argument_errors() {
    let p = CoeffPoly::from_real(&[1.0, 1.0]);
    assert!(norm_exact_even(&p, 3).is_err());
    assert!(norm_exact_even(&p, 0).is_err());
    assert!(norm_sampled(&p, -1.0, 1e-8).is_err());
    assert!(norm_sampled(&p, 2.0, 0.0).is_err());
    assert!(mz_discrete_mean(&p, 1.0, 4).is_err());
    assert!(mz_discrete_mean(&p, 2.0, 0).is_err());
    assert!(sup_norm_estimate(&p, 2).is_err());
}

#[test]
fn rudin_shapiro_sup_bound() {
    for k in 0..=12u32 {
        let (p, _) = build_rudin_shapiro(k).unwrap();
        let s = sup_norm_estimate(&p, 16).unwrap().value;
        let bound = 2f64.powf((k + 1) as f64 / 2.0);
        assert!(s <= bound * (1.0 + 1e-9), "k = {k}: {s} > {bound}");
        assert!(s >= 2f64.powf(k as f64 / 2.0) - 1e-9);
    }
}

#[test]
fn mz_ratio_examples() {
    let (lo, hi) = mz_ratio_experiment(1, 2.0, 10, 5).unwrap();
    assert!(lo >= 0.4 && hi <= 2.5, "{lo} {hi}");
    let again = mz_ratio_experiment(64, 3.0, 10, 5).unwrap();
    assert_eq!(again, mz_ratio_experiment(64, 3.0, 10, 5).unwrap());
    assert!(again.0 <= again.1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn norms_increase_with_alpha(signs in prop::collection::vec(prop_oneof![Just(-1i8), Just(1)], 2..200)) {
        let p = CoeffPoly::from_signs(&signs);
        for (a, b) in [(1.0, 2.0), (2.0, 4.0), (3.0, 3.5)] {
            let na = norm_auto(&p, a, 1e-10).unwrap().value;
            let nb = norm_auto(&p, b, 1e-10).unwrap().value;
            prop_assert!(na <= nb * (1.0 + 1e-9), "{} > {}", na, nb);
        }
    }

    #[test]
    fn discrete_mean_dominates_node_at_one(
        signs in prop::collection::vec(prop_oneof![Just(-1i8), Just(0), Just(1)], 1..2000),
        alpha in 1.01f64..8.0,
        m in 1usize..4000,
    ) {
        let p = CoeffPoly::from_signs(&signs);
        let at_one = p.coefficient_sum().norm().powf(alpha) / m as f64;
        prop_assert!(mz_discrete_mean(&p, alpha, m).unwrap() >= at_one);
    }

    #[test]
    fn exact_even_is_l2_at_two(coeffs in prop::collection::vec(-3i8..=3, 1..300)) {
        let p = CoeffPoly::from_signs(&coeffs);
        let l2 = p.l2_norm_sqr().sqrt();
        prop_assert!((norm_exact_even(&p, 2).unwrap().value - l2).abs() <= 1e-12 * l2.max(1.0));
    }
}
