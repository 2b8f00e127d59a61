//! Reference values computed independently of the library: direct finite products,
//! brute-force partial sums and closed forms that follow from the definitions.

use qseries::hyperseries::{convergence_domain, e_b, e_b_series, kinf, phi, psi, SeriesSpec};
use qseries::qderivative::{d_lambda, d_lambda_iter, FnPoint, Lambda, Polynomial, Power};
use qseries::qfactorial::{qpoch_finite, qpoch_infinite, qpoch_multi, qpoch_recip_finite, Order};
use qseries::qoperator::{apply_eop, EOpSpec, Sign};
use qseries::theta::{theta_product, theta_series, ThetaArg};
use qseries::{c64, ComplexScalar, QBase, QError, Truncation};

fn q(v: f64) -> QBase {
    QBase::new(c64(v, 0.0)).unwrap()
}

fn t() -> Truncation {
    Truncation::default()
}

fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

#[track_caller]
fn close(a: ComplexScalar, b: ComplexScalar, tol: f64) {
    assert!(rel(a, b) <= tol, "{a} vs {b}: rel {:e}", rel(a, b));
}

/// `prod_{k<n} (1 - a q^k)` by plain multiplication.
fn brute_poch(a: ComplexScalar, q: ComplexScalar, n: usize) -> ComplexScalar {
    (0..n).fold(c64(1.0, 0.0), |acc, k| acc * (c64(1.0, 0.0) - a * q.powi(k as i32)))
}

#[test]
fn finite_factorials() {
    assert_eq!(qpoch_finite(c64(0.7, -0.2), q(0.3), 0).unwrap(), c64(1.0, 0.0));
    assert_eq!(qpoch_finite(c64(0.5, 0.0), q(0.5), 3).unwrap(), c64(0.328125, 0.0));
    close(qpoch_finite(c64(0.3, 0.0), q(0.5), -1).unwrap(), c64(2.5, 0.0), 1e-15);
    assert!(matches!(qpoch_finite(c64(0.5, 0.0), q(0.5), -1), Err(QError::Pole(_))));

    assert_eq!(qpoch_recip_finite(c64(0.4, 0.0), q(0.4), -2).unwrap(), c64(0.0, 0.0));
    close(qpoch_recip_finite(c64(0.3, 0.0), q(0.5), 2).unwrap(), c64(1.0 / (0.7 * 0.85), 0.0), 1e-15);
    assert_eq!(qpoch_recip_finite(c64(0.9, 0.1), q(0.2), 0).unwrap(), c64(1.0, 0.0));
}

#[test]
fn infinite_and_multiple_factorials() {
    assert_eq!(qpoch_infinite(c64(0.0, 0.0), q(0.5), &t()).unwrap(), c64(1.0, 0.0));
    close(qpoch_infinite(c64(0.5, 0.0), q(0.5), &t()).unwrap(), c64(0.288_788_095_086_602_4, 0.0), 1e-13);
    assert_eq!(qpoch_infinite(c64(1.0, 0.0), q(0.3), &t()).unwrap(), c64(0.0, 0.0));
    let zc = c64(0.3, 0.4);
    let qc = QBase::new(c64(0.5, 0.3)).unwrap();
    close(qpoch_infinite(zc, qc, &t()).unwrap(), brute_poch(zc, qc.q(), 400), 1e-13);

    assert_eq!(qpoch_multi(&[], q(0.5), Order::Finite(5), &t()).unwrap(), c64(1.0, 0.0));
    assert_eq!(
        qpoch_multi(&[c64(0.5, 0.0), c64(0.25, 0.0)], q(0.5), Order::Finite(2), &t()).unwrap(),
        c64(0.246_093_75, 0.0)
    );
    let zeros = [c64(0.0, 0.0); 3];
    assert_eq!(qpoch_multi(&zeros, q(0.5), Order::Infinite, &t()).unwrap(), c64(1.0, 0.0));
}

#[test]
fn theta_values() {
    let s = theta_series(ThetaArg::new(c64(3.0, 0.0), q(0.0)).unwrap(), &t()).unwrap();
    close(s, c64(4.0 / 3.0, 0.0), 1e-15);
    let p = theta_product(ThetaArg::new(c64(3.0, 0.0), q(0.0)).unwrap(), &t()).unwrap();
    close(p, c64(4.0 / 3.0, 0.0), 1e-15);

    assert!(theta_series(ThetaArg::new(c64(-1.0, 0.0), q(0.5)).unwrap(), &t()).unwrap().norm() < 1e-14);
    assert_eq!(theta_product(ThetaArg::new(c64(-1.0, 0.0), q(0.4)).unwrap(), &t()).unwrap(), c64(0.0, 0.0));

    for (x, qq) in [(c64(2.0, 0.0), 0.3), (c64(0.7, 0.2), 0.35)] {
        let arg = ThetaArg::new(x, q(qq)).unwrap();
        close(theta_series(arg, &t()).unwrap(), theta_product(arg, &t()).unwrap(), 1e-10);
    }
    // (q, -qx, -1/x; q)_inf from the plain products
    let (x, qq) = (c64(0.6, -0.9), c64(0.45, 0.1));
    let want = brute_poch(qq, qq, 300) * brute_poch(-qq * x, qq, 300) * brute_poch(-x.inv(), qq, 300);
    let arg = ThetaArg::new(x, QBase::new(qq).unwrap()).unwrap();
    close(theta_series(arg, &t()).unwrap(), want, 1e-12);
}

#[test]
fn unilateral_series() {
    let a = c64(0.3, 0.0);
    let spec = |z: f64| SeriesSpec::unilateral(vec![a], vec![], q(0.4), c64(z, 0.0));
    assert_eq!(phi(&spec(0.0), &t()).unwrap(), c64(1.0, 0.0));
    let want = qpoch_infinite(c64(0.15, 0.0), q(0.4), &t()).unwrap() / qpoch_infinite(c64(0.5, 0.0), q(0.4), &t()).unwrap();
    close(phi(&spec(0.5), &t()).unwrap(), want, 1e-13);

    // 2phi1(q^-2, b; c; q, z): three terms
    let (qq, b, c, z) = (0.5f64, c64(0.3, 0.2), c64(0.7, 0.0), c64(0.9, -0.4));
    let up = [c64(qq.powi(-2), 0.0), b];
    let mut want = c64(0.0, 0.0);
    for n in 0..3 {
        let num = brute_poch(up[0], c64(qq, 0.0), n) * brute_poch(b, c64(qq, 0.0), n);
        let den = brute_poch(c64(qq, 0.0), c64(qq, 0.0), n) * brute_poch(c, c64(qq, 0.0), n);
        want += num / den * z.powi(n as i32);
    }
    let s = SeriesSpec::unilateral(up.to_vec(), vec![c], q(qq), z);
    close(phi(&s, &t()).unwrap(), want, 1e-13);
}

#[test]
fn bilateral_series() {
    let (a, qq, z) = (c64(0.6, 0.1), 0.4, c64(0.5, 0.2));
    let with_q = SeriesSpec::bilateral(vec![a], vec![c64(qq, 0.0)], q(qq), z);
    let uni = SeriesSpec::unilateral(vec![a], vec![], q(qq), z);
    close(psi(&with_q, &t()).unwrap(), phi(&uni, &t()).unwrap(), 1e-13);

    let (a, b, z) = (c64(0.6, 0.0), c64(0.1, 0.0), c64(0.5, 0.0));
    let s = SeriesSpec::bilateral(vec![a], vec![b], q(qq), z);
    let qv = c64(qq, 0.0);
    let num = [qv, b / a, a * z, qv / (a * z)];
    let den = [b, qv / a, z, b / (a * z)];
    let pi = |v: &[ComplexScalar]| v.iter().map(|&p| brute_poch(p, qv, 400)).product::<ComplexScalar>();
    close(psi(&s, &t()).unwrap(), pi(&num) / pi(&den), 1e-12);

    // 0psi1(-; 0; q, z) = sum q^{C(n,2)} (-z)^n = theta(-z/q; q)
    let z = c64(0.8, 0.3);
    let s = SeriesSpec::bilateral(vec![], vec![c64(0.0, 0.0)], q(qq), z);
    let th = theta_series(ThetaArg::new(-z / qq, q(qq)).unwrap(), &t()).unwrap();
    close(psi(&s, &t()).unwrap(), th, 1e-13);
}

#[test]
fn convergence_domains() {
    let s = SeriesSpec::bilateral(vec![c64(0.6, 0.0)], vec![c64(0.1, 0.0)], q(0.4), c64(0.5, 0.0));
    let d = convergence_domain(&s);
    assert!(d.inside);
    assert!((d.lower_bound - 1.0 / 6.0).abs() < 1e-15);
    let s = SeriesSpec::bilateral(vec![c64(0.6, 0.0)], vec![c64(0.1, 0.0)], q(0.4), c64(0.1, 0.0));
    assert!(!convergence_domain(&s).inside);
    // theta type: the zero lower parameter makes the negative tail superexponential
    let s = SeriesSpec::bilateral(vec![], vec![c64(0.0, 0.0)], q(0.4), c64(7.0, 0.0));
    let d = convergence_domain(&s);
    assert!(d.inside && d.lower_bound == 0.0 && d.upper_bound.is_infinite());
    // a nonzero one leaves the negative tail geometric with ratio b/z
    let s = SeriesSpec::bilateral(vec![], vec![c64(0.3, 0.0)], q(0.4), c64(7.0, 0.0));
    let d = convergence_domain(&s);
    assert!(d.inside && (d.lower_bound - 0.3).abs() < 1e-15);
}

#[test]
fn exponential_family() {
    for b in 0..5 {
        assert_eq!(e_b(c64(0.0, 0.0), q(0.5), b, &t()).unwrap(), c64(1.0, 0.0));
    }
    let y = c64(0.3, 0.0);
    close(e_b(y, q(0.5), 1, &t()).unwrap(), brute_poch(-y, c64(0.5, 0.0), 200), 1e-14);
    let series = e_b_series(y, q(0.5), 0, &t()).unwrap();
    close(series, c64(1.0, 0.0) / brute_poch(y, c64(0.5, 0.0), 200), 1e-10);

    // K_inf(1) at q = 1/2: sum q^{n(n-1)} / (q;q)_n, 40 terms
    let qv = c64(0.5, 0.0);
    let want: ComplexScalar = (0..40).map(|n| qv.powi(n * (n - 1)) / brute_poch(qv, qv, n as usize)).sum();
    close(kinf(c64(1.0, 0.0), q(0.5), &t()).unwrap(), want, 1e-12);
    let y = c64(-2.0, 0.0);
    assert_eq!(kinf(y, q(0.3), &t()).unwrap(), e_b(y, q(0.3), 2, &t()).unwrap());
}

#[test]
fn lambda_derivative() {
    let five = FnPoint::new(|_| Ok(c64(5.0, 0.0)));
    let lam = |v: f64| Lambda::new(c64(v, 0.0)).unwrap();
    assert_eq!(d_lambda(&five, lam(0.3), c64(2.0, 0.0)).unwrap(), c64(2.5, 0.0));
    assert_eq!(d_lambda(&Power(2), lam(2.0), c64(3.0, 0.0)).unwrap(), c64(12.0, 0.0));
    assert_eq!(d_lambda(&Power(1), lam(1.0), c64(7.0, 0.0)).unwrap(), c64(1.0, 0.0));

    let x = c64(1.3, -0.4);
    let f = Polynomial::new(vec![c64(0.2, 0.1), c64(-1.0, 0.0), c64(0.0, 0.5), c64(0.7, 0.0)]);
    assert_eq!(d_lambda_iter(&f, lam(0.6), 0, x).unwrap(), c64(0.2, 0.1) + x * (c64(-1.0, 0.0) + x * (c64(0.0, 0.5) + x * 0.7)));
    close(d_lambda_iter(&Power(3), lam(0.5), 2, x).unwrap(), x * 0.5f64.powi(5), 1e-15);

    let l = Lambda::new(c64(0.7, 0.2)).unwrap();
    let once = |g: &dyn Fn(ComplexScalar) -> ComplexScalar, x: ComplexScalar| g(l.value() * x) / x;
    let f0 = |x: ComplexScalar| f.coeffs.iter().rev().fold(c64(0.0, 0.0), |acc, &c| acc * x + c);
    let f1 = |x: ComplexScalar| once(&f0, x);
    let f2 = |x: ComplexScalar| once(&f1, x);
    close(d_lambda_iter(&f, l, 3, x).unwrap(), once(&f2, x), 1e-12);
}

#[test]
fn operator_examples() {
    let (x, y) = (c64(0.9, 0.2), c64(0.25, -0.1));
    let f = Polynomial::new(vec![c64(1.0, 0.0), c64(2.0, -1.0)]);
    let op0 = EOpSpec::new(c64(0.0, 0.0), q(0.4), 2, Sign::Plus);
    assert_eq!(apply_eop(&op0, &f, x, &t()).unwrap(), f.coeffs[0] + f.coeffs[1] * x);

    // E_q(y D_q | q^2) x^n = x^n (-q^n y / x; q)_inf
    let qq = 0.4f64;
    for n in 0..4 {
        let op = EOpSpec::new(y, q(qq), 2, Sign::Plus);
        let want = x.powi(n) * brute_poch(-y * qq.powi(n) / x, c64(qq, 0.0), 200);
        close(apply_eop(&op, &Power(n as i64), x, &t()).unwrap(), want, 1e-12);
    }

    // E_q(y D_{q^-1} | q) theta(a x) = theta(a x) (-a y; q)_inf
    let a = c64(0.8, 0.3);
    let th = FnPoint::new(move |x: ComplexScalar| theta_product(ThetaArg::new(a * x, q(qq))?, &t()));
    let op = EOpSpec::new(y, q(qq), 1, Sign::Minus);
    let want = theta_product(ThetaArg::new(a * x, q(qq)).unwrap(), &t()).unwrap() * brute_poch(-a * y, c64(qq, 0.0), 200);
    close(apply_eop(&op, &th, x, &t()).unwrap(), want, 1e-10);
}
