//! q-shifted factorials `(a;q)_n` for finite, negative and infinite `n`.
//!
//! Negative indices follow `(a;q)_{-m} = 1/(a q^{-m};q)_m`, the only convention
//! under which `(q^n a;q)_inf = (a;q)_inf / (a;q)_n` holds for every integer `n`.

use crate::error::{QError, QResult};
use crate::scalar::{ComplexScalar, Scaled};

/// Factors in reciprocal positions smaller than this are treated as exact poles.
pub const POLE_EPS: f64 = 1e-12;

/// The base `q`, restricted to the open unit disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase {
    q: ComplexScalar,
}

impl QBase {
    pub fn new(q: impl Into<ComplexScalar>) -> QResult<QBase> {
        let q = q.into();
        if !(q.re.is_finite() && q.im.is_finite()) || q.norm() >= 1.0 {
            return Err(QError::InvalidArgument(format!("q = {q} must satisfy |q| < 1")));
        }
        Ok(QBase { q })
    }

    #[inline]
    pub fn q(&self) -> ComplexScalar {
        self.q
    }

    /// The base `q^2`, used by quadratic-base products.
    pub fn squared(&self) -> QBase {
        QBase { q: self.q * self.q }
    }

    pub fn is_zero(&self) -> bool {
        self.q.norm() == 0.0
    }
}

/// Stopping policy shared by every infinite sum and product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    /// Term-magnitude threshold (absolute for products, relative for sums).
    pub eps: f64,
    pub max_terms: usize,
    /// How many successive small terms are needed before stopping.
    pub consecutive_small: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { eps: 1e-14, max_terms: 10_000, consecutive_small: 3 }
    }
}

impl Truncation {
    pub fn new(eps: f64, max_terms: usize, consecutive_small: usize) -> QResult<Truncation> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(QError::InvalidArgument(format!("eps = {eps} must be positive")));
        }
        if max_terms == 0 {
            return Err(QError::InvalidArgument("max_terms must be at least 1".into()));
        }
        if consecutive_small == 0 {
            return Err(QError::InvalidArgument("consecutive_small must be at least 1".into()));
        }
        Ok(Truncation { eps, max_terms, consecutive_small })
    }
}

/// A value together with the number of terms (or factors) it consumed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub value: Scaled,
    pub terms: usize,
}

/// Convert an extended-range result back to binary64, failing loudly on overflow.
pub(crate) fn finish(v: Scaled, what: &str) -> QResult<ComplexScalar> {
    if !v.is_valid() {
        return Err(QError::Domain(format!("{what} evaluated to an undefined value")));
    }
    v.to_complex_checked()
        .ok_or_else(|| QError::Overflow(format!("{what} has magnitude 2^{:.0}", v.log2_abs())))
}

/// `(a;q)_n` for any integer `n`.
pub fn qpoch_finite(a: ComplexScalar, base: QBase, n: i64) -> QResult<ComplexScalar> {
    finish(qpoch_finite_scaled(a, base, n)?, "(a;q)_n")
}

pub fn qpoch_finite_scaled(a: ComplexScalar, base: QBase, n: i64) -> QResult<Scaled> {
    let q = base.q();
    if n >= 0 {
        let mut p = Scaled::ONE;
        let mut qk = ComplexScalar::new(1.0, 0.0);
        for _ in 0..n {
            p *= ComplexScalar::new(1.0, 0.0) - a * qk;
            qk *= q;
        }
        return Ok(p);
    }
    let m = n.unsigned_abs();
    if base.is_zero() {
        // every factor 1 - a q^{-k} is infinite unless a = 0
        return Ok(if a.norm() == 0.0 { Scaled::ONE } else { Scaled::ZERO });
    }
    let mut den = Scaled::ONE;
    let mut qk = ComplexScalar::new(1.0, 0.0);
    for k in 1..=m {
        qk *= q;
        let f = ComplexScalar::new(1.0, 0.0) - a / qk;
        if f.norm() < POLE_EPS {
            return Err(QError::Pole(format!(
                "(a;q)_{n} with a = {a}: factor 1 - a q^-{k} vanishes"
            )));
        }
        den *= f;
    }
    Ok(den.recip())
}

/// `1/(b;q)_n`. For negative `n` this is the finite product `(b q^n;q)_{-n}`,
/// which is exactly zero when `b = q^k` for some `1 <= k <= -n`.
pub fn qpoch_recip_finite(b: ComplexScalar, base: QBase, n: i64) -> QResult<ComplexScalar> {
    finish(qpoch_recip_finite_scaled(b, base, n)?, "1/(b;q)_n")
}

pub fn qpoch_recip_finite_scaled(b: ComplexScalar, base: QBase, n: i64) -> QResult<Scaled> {
    let q = base.q();
    let one = ComplexScalar::new(1.0, 0.0);
    if n >= 0 {
        let mut den = Scaled::ONE;
        let mut qk = one;
        for k in 0..n {
            let f = one - b * qk;
            if f.norm() < POLE_EPS {
                return Err(QError::Pole(format!(
                    "1/(b;q)_{n} with b = {b}: factor 1 - b q^{k} vanishes"
                )));
            }
            den *= f;
            qk *= q;
        }
        return Ok(den.recip());
    }
    let m = n.unsigned_abs();
    if base.is_zero() {
        if b.norm() == 0.0 {
            return Ok(Scaled::ONE);
        }
        return Err(QError::Domain(format!("1/(b;q)_{n} is infinite at q = 0 with b = {b}")));
    }
    let mut p = Scaled::ONE;
    let mut qk = one;
    for _ in 1..=m {
        qk *= q;
        let f = one - b / qk;
        if f.norm() < POLE_EPS {
            return Ok(Scaled::ZERO);
        }
        p *= f;
    }
    Ok(p)
}

/// `(a;q)_inf`, stopping once `|a q^K| < eps` for `consecutive_small` successive `K`.
/// The neglected tail contributes a relative error of about `|a q^K| / (1 - |q|)`.
pub fn qpoch_infinite(a: ComplexScalar, base: QBase, trunc: &Truncation) -> QResult<ComplexScalar> {
    finish(qpoch_infinite_scaled(a, base, trunc)?.value, "(a;q)_inf")
}

pub fn qpoch_infinite_scaled(a: ComplexScalar, base: QBase, trunc: &Truncation) -> QResult<Outcome> {
    let q = base.q();
    let one = ComplexScalar::new(1.0, 0.0);
    let mut p = Scaled::ONE;
    let mut t = a;
    let mut small = 0usize;
    for k in 0..trunc.max_terms {
        let f = one - t;
        if f.re == 0.0 && f.im == 0.0 {
            return Ok(Outcome { value: Scaled::ZERO, terms: k + 1 });
        }
        p *= f;
        if t.norm() < trunc.eps {
            small += 1;
            if small >= trunc.consecutive_small {
                return Ok(Outcome { value: p, terms: k + 1 });
            }
        } else {
            small = 0;
        }
        t *= q;
    }
    Err(QError::BudgetExceeded { what: format!("(a;q)_inf with a = {a}"), limit: trunc.max_terms })
}

/// `1/(a;q)_inf`, reporting a pole instead of dividing by a vanishing factor.
pub fn qpoch_infinite_recip_scaled(
    a: ComplexScalar,
    base: QBase,
    trunc: &Truncation,
) -> QResult<Outcome> {
    let q = base.q();
    let mut t = a;
    for k in 0..trunc.max_terms {
        if (ComplexScalar::new(1.0, 0.0) - t).norm() < POLE_EPS {
            return Err(QError::Pole(format!("1/(a;q)_inf with a = {a}: factor 1 - a q^{k} vanishes")));
        }
        if t.norm() < 0.5 {
            break;
        }
        t *= q;
    }
    let o = qpoch_infinite_scaled(a, base, trunc)?;
    Ok(Outcome { value: o.value.recip(), terms: o.terms })
}

/// Order of a multiple factorial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(i64),
    Infinite,
}

/// `(a_1, ..., a_m; q)_n`, the product of the individual factorials.
pub fn qpoch_multi(
    params: &[ComplexScalar],
    base: QBase,
    n: Order,
    trunc: &Truncation,
) -> QResult<ComplexScalar> {
    finish(qpoch_multi_scaled(params, base, n, trunc)?, "(a_1,...,a_m;q)_n")
}

pub fn qpoch_multi_scaled(
    params: &[ComplexScalar],
    base: QBase,
    n: Order,
    trunc: &Truncation,
) -> QResult<Scaled> {
    let mut p = Scaled::ONE;
    for (i, &a) in params.iter().enumerate() {
        let f = match n {
            Order::Finite(n) => qpoch_finite_scaled(a, base, n),
            Order::Infinite => qpoch_infinite_scaled(a, base, trunc).map(|o| o.value),
        }
        .map_err(|e| e.context(format!("parameter #{} ({a})", i + 1)))?;
        p *= f;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64;

    fn qb(q: f64) -> QBase {
        QBase::new(c64(q, 0.0)).unwrap()
    }

    #[test]
    fn qbase_rejects_unit_modulus() {
        assert!(QBase::new(c64(1.0, 0.0)).is_err());
        assert!(QBase::new(c64(0.6, 0.8)).is_err());
        assert!(QBase::new(c64(0.0, 0.0)).is_ok());
    }

    #[test]
    fn truncation_validates() {
        assert!(Truncation::new(0.0, 10, 1).is_err());
        assert!(Truncation::new(1e-10, 0, 1).is_err());
        assert!(Truncation::new(1e-10, 1, 0).is_err());
        assert_eq!(Truncation::default(), Truncation::new(1e-14, 10_000, 3).unwrap());
    }

    #[test]
    fn finite_examples() {
        assert_eq!(qpoch_finite(c64(0.7, -2.0), qb(0.3), 0).unwrap(), c64(1.0, 0.0));
        assert_eq!(qpoch_finite(c64(0.5, 0.0), qb(0.5), 3).unwrap(), c64(0.328125, 0.0));
        let v = qpoch_finite(c64(0.3, 0.0), qb(0.5), -1).unwrap();
        assert!((v - c64(2.5, 0.0)).norm() < 1e-15);
        assert!(matches!(qpoch_finite(c64(0.5, 0.0), qb(0.5), -1), Err(QError::Pole(_))));
    }

    #[test]
    fn recip_examples() {
        assert_eq!(qpoch_recip_finite(c64(0.4, 0.0), qb(0.4), -2).unwrap(), c64(0.0, 0.0));
        let v = qpoch_recip_finite(c64(0.3, 0.0), qb(0.5), 2).unwrap();
        assert!((v.re - 1.0 / (0.7 * 0.85)).abs() < 1e-15);
        assert!((v.re - 1.680672268907563).abs() < 1e-12);
        assert_eq!(qpoch_recip_finite(c64(3.0, 1.0), qb(0.2), 0).unwrap(), c64(1.0, 0.0));
        assert!(matches!(qpoch_recip_finite(c64(1.0, 0.0), qb(0.5), 2), Err(QError::Pole(_))));
    }

    #[test]
    fn infinite_examples() {
        let t = Truncation::default();
        assert_eq!(qpoch_infinite(c64(0.0, 0.0), qb(0.5), &t).unwrap(), c64(1.0, 0.0));
        let euler = qpoch_infinite(c64(0.5, 0.0), qb(0.5), &t).unwrap();
        assert!((euler.re - 0.288_788_095_086_602_4).abs() < 1e-13, "{euler}");
        assert_eq!(qpoch_infinite(c64(1.0, 0.0), qb(0.3), &t).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn infinite_budget_is_enforced() {
        let t = Truncation::new(1e-14, 5, 3).unwrap();
        assert!(matches!(
            qpoch_infinite(c64(0.5, 0.0), qb(0.9), &t),
            Err(QError::BudgetExceeded { limit: 5, .. })
        ));
    }

    #[test]
    fn multi_examples() {
        let t = Truncation::default();
        assert_eq!(qpoch_multi(&[], qb(0.5), Order::Finite(5), &t).unwrap(), c64(1.0, 0.0));
        let v = qpoch_multi(&[c64(0.5, 0.0), c64(0.25, 0.0)], qb(0.5), Order::Finite(2), &t).unwrap();
        assert_eq!(v, c64(0.24609375, 0.0));
        let z = c64(0.0, 0.0);
        assert_eq!(qpoch_multi(&[z, z, z], qb(0.5), Order::Infinite, &t).unwrap(), c64(1.0, 0.0));
        let err = qpoch_multi(&[c64(0.1, 0.0), c64(0.5, 0.0)], qb(0.5), Order::Finite(-1), &t);
        match err {
            Err(QError::Pole(m)) => assert!(m.contains("parameter #2"), "{m}"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn q_zero_degenerates() {
        let t = Truncation::default();
        let a = c64(0.3, 0.1);
        assert_eq!(qpoch_finite(a, qb(0.0), 4).unwrap(), c64(1.0, 0.0) - a);
        assert_eq!(qpoch_infinite(a, qb(0.0), &t).unwrap(), c64(1.0, 0.0) - a);
    }

    #[test]
    fn huge_argument_product_stays_finite_in_scaled_form() {
        let t = Truncation::default();
        let a = c64(1e250, 1e250);
        let o = qpoch_infinite_scaled(a, qb(0.5), &t).unwrap();
        assert!(o.value.is_valid());
        assert!(o.value.log2_abs() > 1024.0);
        assert!(matches!(qpoch_infinite(a, qb(0.5), &t), Err(QError::Overflow(_))));
    }
}
