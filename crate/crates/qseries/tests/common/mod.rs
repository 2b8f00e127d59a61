//! Seeded checks of the lambda-derivative algebra, shared by the property and acceptance tests.

#![allow(dead_code)]

use qseries::qderivative::{d_lambda, d_lambda_iter, FnPoint, Lambda, PointFunction, Polynomial};
use qseries::ComplexScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

pub fn polar(rng: &mut impl Rng, lo: f64, hi: f64) -> ComplexScalar {
    ComplexScalar::from_polar(rng.random_range(lo..hi), rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// Degree drawn from `0..=5`, coefficients from the unit disc.
pub fn polynomial(rng: &mut impl Rng) -> Polynomial {
    let deg = rng.random_range(0..=5);
    Polynomial::new((0..=deg).map(|_| polar(rng, 0.1, 1.0)).collect())
}

fn ev(f: &dyn PointFunction, x: ComplexScalar) -> ComplexScalar {
    f.eval(x).expect("polynomials are total")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Product,
    Averaged,
    Quotient,
    Linearity,
    Leibniz,
    MultiProduct,
}

impl Rule {
    pub const ALL: [Rule; 6] = [Rule::Product, Rule::Averaged, Rule::Quotient, Rule::Linearity, Rule::Leibniz, Rule::MultiProduct];
}

fn product<'a>(fs: &'a [Polynomial]) -> FnPoint<impl Fn(ComplexScalar) -> qseries::QResult<ComplexScalar> + Send + Sync + 'a> {
    FnPoint::new(move |x| Ok(fs.iter().map(|f| ev(f, x)).product()))
}

/// Largest relative residual of `rule` over one random draw of operands, `lambda` and `x`.
pub fn residual(rule: Rule, rng: &mut impl Rng) -> f64 {
    let lam_c = polar(rng, 0.3, 1.6);
    let lam = Lambda::new(lam_c).unwrap();
    let x = polar(rng, 0.3, 2.0);
    let f = polynomial(rng);
    let g = polynomial(rng);
    fn d1(h: &dyn PointFunction, lam: Lambda, x: ComplexScalar) -> ComplexScalar {
        d_lambda(h, lam, x).unwrap()
    }
    fn dk(h: &dyn PointFunction, lam: Lambda, n: u32, x: ComplexScalar) -> ComplexScalar {
        d_lambda_iter(h, lam, n, x).unwrap()
    }
    let d = |h: &dyn PointFunction| d1(h, lam, x);
    let dn = |h: &dyn PointFunction, n: u32| dk(h, lam, n, x);
    let fg = [f.clone(), g.clone()];
    match rule {
        Rule::Product => {
            let lhs = d1(&product(&fg), lam, x);
            [ev(&f, lam_c * x) * d(&g), d(&f) * ev(&g, lam_c * x), x * d(&f) * d(&g)]
                .into_iter()
                .map(|r| rel(lhs, r))
                .fold(0.0, f64::max)
        }
        Rule::Averaged => {
            let rhs = (ev(&f, lam_c * x) * d(&g) + d(&f) * ev(&g, lam_c * x)) * 0.5;
            rel(d1(&product(&fg), lam, x), rhs)
        }
        Rule::Quotient => {
            let gl = ev(&g, lam_c * x);
            if gl.norm() < 1e-3 {
                return 0.0;
            }
            let (f2, g2) = (f.clone(), g.clone());
            let ratio = FnPoint::new(move |x| Ok(ev(&f2, x) / ev(&g2, x)));
            rel(d1(&ratio, lam, x), d(&f) / gl)
        }
        Rule::Linearity => {
            let (a, b) = (polar(rng, 0.1, 2.0), polar(rng, 0.1, 2.0));
            let (f2, g2) = (f.clone(), g.clone());
            let comb = FnPoint::new(move |x| Ok(a * ev(&f2, x) + b * ev(&g2, x)));
            // measured against the size of the summands, since the sum may cancel
            let (tf, tg) = (a * d(&f), b * d(&g));
            (d1(&comb, lam, x) - (tf + tg)).norm() / (tf.norm() + tg.norm()).max(f64::MIN_POSITIVE)
        }
        Rule::Leibniz => {
            let n = rng.random_range(0..=4u32);
            let pre = lam_c.powi((n * n.saturating_sub(1) / 2) as i32) * x.powi(n as i32);
            rel(dk(&product(&fg), lam, n, x), pre * dn(&f, n) * dn(&g, n))
        }
        Rule::MultiProduct => {
            let n = rng.random_range(0..=3u32);
            let fs = [f, g, polynomial(rng)];
            let k = fs.len() as i32;
            let c2 = (n * n.saturating_sub(1) / 2) as i32;
            let pre = lam_c.powi((k - 1) * c2) * x.powi((k - 1) * n as i32);
            let rhs = fs.iter().map(|h| dn(h, n)).product::<ComplexScalar>() * pre;
            let all = product(&fs);
            rel(dk(&all, lam, n, x), rhs)
        }
    }
}

/// Max residual of `rule` over `samples` draws from a ChaCha stream keyed by `seed`.
pub fn max_residual(rule: Rule, seed: u64, samples: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (rule as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..samples).map(|_| residual(rule, &mut rng)).fold(0.0, f64::max)
}
