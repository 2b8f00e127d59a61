mod common;

use common::{rel, residual, Rule};
use proptest::prelude::*;
use qseries::cli::{format_complex, parse_complex};
use qseries::hyperseries::{phi, SeriesSpec};
use qseries::identities::{find, render_json, verify_cases};
use qseries::qfactorial::{qpoch_finite, qpoch_infinite};
use qseries::theta::{theta_product, theta_series, ThetaArg};
use qseries::{c64, ComplexScalar, QBase, Truncation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex(lo: f64, hi: f64) -> impl Strategy<Value = ComplexScalar> {
    (lo..hi, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(r, t)| ComplexScalar::from_polar(r, t))
}

fn base() -> impl Strategy<Value = QBase> {
    complex(0.05, 0.85).prop_map(|q| QBase::new(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_rules(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rule in Rule::ALL {
            let r = residual(rule, &mut rng);
            prop_assert!(r <= 1e-11, "{rule:?}: {r:e}");
        }
    }

    #[test]
    fn finite_factorial_splits(a in complex(0.05, 2.0), b in base(), n in 0i64..8, m in 0i64..8) {
        let q = b.q();
        let whole = qpoch_finite(a, b, n + m).unwrap();
        let parts = qpoch_finite(a, b, n).unwrap() * qpoch_finite(a * q.powi(n as i32), b, m).unwrap();
        prop_assert!(rel(whole, parts) <= 1e-12 || whole.norm() < 1e-14);
    }

    #[test]
    fn negative_order_inverts(a in complex(0.05, 0.9), b in base(), n in 1i64..6) {
        // (a;q)_{-n} (a q^{-n};q)_n = 1
        let q = b.q();
        let lhs = qpoch_finite(a, b, -n).unwrap() * qpoch_finite(a * q.powi(-n as i32), b, n).unwrap();
        prop_assert!(rel(lhs, c64(1.0, 0.0)) <= 1e-10);
    }

    #[test]
    fn infinite_factorial_splits(a in complex(0.05, 2.0), b in base(), n in 0i64..6) {
        let t = Truncation::default();
        let q = b.q();
        let whole = qpoch_infinite(a, b, &t).unwrap();
        let tail = qpoch_infinite(a * q.powi(n as i32), b, &t).unwrap();
        let parts = qpoch_finite(a, b, n).unwrap() * tail;
        prop_assert!(rel(whole, parts) <= 1e-12 || whole.norm() < 1e-14);
    }

    #[test]
    fn theta_series_equals_product(x in complex(0.2, 3.0), b in base()) {
        let t = Truncation::default();
        let arg = ThetaArg::new(x, b).unwrap();
        let (s, p) = (theta_series(arg, &t).unwrap(), theta_product(arg, &t).unwrap());
        prop_assert!(rel(s, p) <= 1e-9 || (s - p).norm() <= 1e-13, "{s} vs {p}");
    }

    #[test]
    fn theta_quasi_periodicity(x in complex(0.3, 2.0), b in base()) {
        // q x theta(q x) = theta(x) and x theta(x) = theta(1/x)
        let t = Truncation::default();
        let th = |z: ComplexScalar| theta_series(ThetaArg::new(z, b).unwrap(), &t).unwrap();
        let q = b.q();
        let scale = th(x).norm().max(1e-300);
        prop_assert!(((q * x) * th(q * x) - th(x)).norm() / scale <= 1e-11);
        prop_assert!((x * th(x) - th(x.inv())).norm() / scale <= 1e-11);
    }

    #[test]
    fn binomial_theorem(a in complex(0.05, 2.0), z in complex(0.01, 0.8), b in base()) {
        let t = Truncation::default();
        let lhs = phi(&SeriesSpec::unilateral(vec![a], vec![], b, z), &t).unwrap();
        let rhs = qpoch_infinite(a * z, b, &t).unwrap() / qpoch_infinite(z, b, &t).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-10);
    }

    #[test]
    fn complex_literals_round_trip(re in prop::num::f64::NORMAL | prop::num::f64::ZERO,
                                   im in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
        let z = c64(re, im);
        prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn verification_is_a_function_of_the_seed(seed in any::<u64>()) {
        let case = find("q-binomial").unwrap();
        let t = Truncation::default();
        let a = render_json(&verify_cases(&[case], 3, seed, 1e-9, &t).unwrap()).unwrap();
        let b = render_json(&verify_cases(&[case], 3, seed, 1e-9, &t).unwrap()).unwrap();
        prop_assert_eq!(&a, &b);
        let c = render_json(&verify_cases(&[case], 3, seed.wrapping_add(1), 1e-9, &t).unwrap()).unwrap();
        prop_assert_ne!(a, c);
    }
}
