use num_complex::Complex64;
use proptest::prelude::*;

use theta5::exact::{cyclo_inv, int, rat, CycloQ5, Phase};
use theta5::numeric::{series_eval_num, theta_num, ComplexPoint, NumericConfig};
use theta5::qseries::{series_add, series_equal, series_inv, series_mul, tau_derivative, FracSeries};
use theta5::theta::{catalog_chars, theta_const};
use theta5::BigRat;

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn cyclo() -> impl Strategy<Value = CycloQ5> {
    [small_rat(), small_rat(), small_rat(), small_rat()].prop_map(CycloQ5::from)
}

/// (2πi)^cpow · e(a/10) · q^{qpow} · Σ c_k q^{k/scale}, with at least a unit leading term.
fn series() -> impl Strategy<Value = FracSeries> {
    (
        prop::sample::select(vec![1u64, 2, 5, 10]),
        0i64..10,
        -3i64..4,
        0i32..3,
        prop::collection::vec(-4i64..=4, 1..12),
    )
        .prop_map(|(scale, a, qn, cpow, mut coeffs)| {
            coeffs[0] = if coeffs[0] == 0 { 1 } else { coeffs[0] };
            let terms = coeffs.into_iter().enumerate().map(|(k, c)| (k as u64, CycloQ5::from_int(c)));
            FracSeries::from_terms(scale, Phase::from_ratio(a, 10), rat(qn, 2), cpow, terms, int(3))
        })
}

fn agree(f: &FracSeries, g: &FracSeries) -> bool {
    series_equal(f, g).passed
}

fn embed_close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in cyclo(), y in cyclo(), w in cyclo()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &cyclo_inv(&x).unwrap()).is_one());
        } else {
            prop_assert!(cyclo_inv(&x).is_err());
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism(x in cyclo(), y in cyclo()) {
        prop_assert!(embed_close((&x * &y).embed(), x.embed() * y.embed()));
        prop_assert!(embed_close((&x + &y).embed(), x.embed() + y.embed()));
    }

    #[test]
    fn series_ring_laws(f in series(), g in series(), h in series()) {
        prop_assert!(agree(&series_mul(&f, &g), &series_mul(&g, &f)));
        prop_assert!(agree(&series_mul(&series_mul(&f, &g), &h), &series_mul(&f, &series_mul(&g, &h))));
        let one = FracSeries::one(int(3));
        prop_assert!(agree(&series_mul(&f, &one), &f));
        if let (Ok(fg), Ok(gf)) = (series_add(&f, &g), series_add(&g, &f)) {
            prop_assert!(agree(&fg, &gf));
        }
    }

    #[test]
    fn theta_operator_is_a_derivation(f in series(), g in series()) {
        let lhs = tau_derivative(&series_mul(&f, &g));
        let rhs = series_add(&series_mul(&tau_derivative(&f), &g), &series_mul(&f, &tau_derivative(&g)));
        prop_assert!(agree(&lhs, &rhs.unwrap()));
    }

    #[test]
    fn inverse_cancels(f in series()) {
        let inv = series_inv(&f).unwrap();
        let prod = series_mul(&f, &inv);
        prop_assert!(agree(&prod, &FracSeries::one(prod.order().clone())));
    }

    #[test]
    fn truncation_is_sound(k in 0usize..12, m in 0u32..3, lo in 2i64..6) {
        let ch = &catalog_chars()[k];
        let short = theta_const(ch, m, &int(lo)).unwrap();
        let long = theta_const(ch, m, &int(lo + 5)).unwrap();
        let out = series_equal(&short, &long);
        prop_assert!(out.passed);
        prop_assert_eq!(out.order_checked, Some(short.abs_order()));
    }

    #[test]
    fn numeric_bridge(k in 0usize..12, m in 0u32..3, re in -0.5f64..0.5, im in 0.8f64..2.0) {
        let ch = &catalog_chars()[k];
        let tau = Complex64::new(re, im);
        let exact = series_eval_num(&theta_const(ch, m, &int(20)).unwrap(), tau).unwrap();
        let direct = theta_num(&ComplexPoint::at_origin(tau).unwrap(), ch, m, &NumericConfig::default()).unwrap();
        let scale = direct.norm().max(1e-3);
        prop_assert!((exact - direct).norm() / scale < 1e-9, "{} m={} {} vs {}", ch, m, exact, direct);
    }
}
