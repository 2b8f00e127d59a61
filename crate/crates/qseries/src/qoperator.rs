//! The q-exponential operator `E_q(y D_{q^{+-1}} | q^b) = sum_n q^{b C(n,2)} y^n / (q;q)_n D^n`
//! applied pointwise to a function.

use crate::error::{QError, QResult};
use crate::qderivative::PointFunction;
use crate::qfactorial::{finish, Outcome, QBase, Truncation};
use crate::scalar::{ComplexScalar, Scaled};

/// Each term costs a function evaluation, so operator sums stop far earlier than series.
pub const DEPTH_CAP: usize = 200;

/// Terms must keep growing this many times in a row before the sum is declared divergent.
const GROWTH_RUN: usize = 10;
/// Growth is only judged after this many terms; early terms often rise before they fall.
const GROWTH_GRACE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    /// `D_q`: the function is sampled at `q^k x`.
    Plus,
    /// `D_{q^{-1}}`: the function is sampled at `q^{-k} x`.
    Minus,
}

impl Sign {
    pub fn from_i32(s: i32) -> QResult<Sign> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(QError::InvalidArgument(format!("operator sign must be +1 or -1, got {s}"))),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EOpSpec {
    pub y: ComplexScalar,
    pub base: QBase,
    pub b: u32,
    pub sign: Sign,
}

impl EOpSpec {
    pub fn new(y: ComplexScalar, base: QBase, b: u32, sign: Sign) -> Self {
        EOpSpec { y, base, b, sign }
    }
}

pub fn apply_eop(op: &EOpSpec, f: &dyn PointFunction, x: ComplexScalar, trunc: &Truncation) -> QResult<ComplexScalar> {
    finish(apply_eop_scaled(op, f, x, trunc)?.value, "operator value")
}

/// Sums `c_k D^k f(x)` with the combined factor updated by
/// `c_k / c_{k-1} = q^{(b -+ 1)(k-1)} y / ((1 - q^k) x)`, so no power of `q` is formed
/// outside extended range.
pub fn apply_eop_scaled(
    op: &EOpSpec,
    f: &dyn PointFunction,
    x: ComplexScalar,
    trunc: &Truncation,
) -> QResult<Outcome> {
    if x.norm() == 0.0 {
        return Err(QError::Domain("operator applied at x = 0".into()));
    }
    let q = op.base.q();
    if op.sign == Sign::Minus && op.base.is_zero() {
        return Err(QError::Domain("D_{q^-1} needs q != 0".into()));
    }
    let mut sum = f.eval_scaled(x)?;
    if op.y.norm() == 0.0 {
        return Ok(Outcome { value: sum, terms: 1 });
    }
    let shift: i64 = match op.sign {
        Sign::Plus => op.b as i64 - 1,
        Sign::Minus => op.b as i64 + 1,
    };
    if op.base.is_zero() && shift < 0 {
        return Err(QError::Domain("E_q(y D_q | 1) needs q != 0".into()));
    }
    let one = ComplexScalar::new(1.0, 0.0);
    let qs = Scaled::from(q);
    let depth = trunc.max_terms.min(DEPTH_CAP);

    let mut coef = Scaled::ONE;
    let mut q_prev = Scaled::ONE; // q^{k-1}
    let mut q_k = one; // q^k in binary64, only used in 1 - q^k
    let mut arg = x;
    let thresh = trunc.eps.log2();
    let mut peak = sum.log2_abs();
    let mut small = 0usize;
    let mut prev_mag = sum.log2_abs();
    let mut growing = 0usize;
    for k in 1..depth {
        q_k *= q;
        coef = coef * q_prev.powi(shift) * op.y / ((one - q_k) * x);
        q_prev *= qs;
        arg = match op.sign {
            Sign::Plus => arg * q,
            Sign::Minus => arg / q,
        };
        if !(arg.re.is_finite() && arg.im.is_finite()) {
            return Err(QError::Overflow(format!("operator argument q^-{k} x leaves binary64 range")));
        }
        let term = coef * f.eval_scaled(arg).map_err(|e| e.context(format!("operator term k = {k}")))?;
        sum += term;
        if !sum.is_valid() {
            return Err(QError::Overflow(format!("operator partial sum at k = {k}")));
        }

        let mag = term.log2_abs();
        if mag > prev_mag && !term.is_zero() {
            growing += 1;
        } else {
            growing = 0;
        }
        prev_mag = mag;
        if k > GROWTH_GRACE && growing >= GROWTH_RUN {
            return Err(QError::Divergence(format!(
                "operator terms grew for {GROWTH_RUN} consecutive k up to k = {k}"
            )));
        }

        peak = peak.max(sum.log2_abs());
        if term.is_zero() || mag < thresh + peak {
            small += 1;
            if small >= trunc.consecutive_small {
                return Ok(Outcome { value: sum, terms: k + 1 });
            }
        } else {
            small = 0;
        }
    }
    Err(QError::BudgetExceeded { what: format!("operator sum (b = {}, sign {:?})", op.b, op.sign), limit: depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperseries::e_b;
    use crate::qderivative::{Power, ScaledFn};
    use crate::qfactorial::qpoch_infinite;
    use crate::scalar::c64;
    use crate::theta::theta_scaled;

    fn qb(q: f64) -> QBase {
        QBase::new(c64(q, 0.0)).unwrap()
    }

    #[test]
    fn zero_y_returns_f() {
        let t = Truncation::default();
        let op = EOpSpec::new(c64(0.0, 0.0), qb(0.4), 2, Sign::Plus);
        let x = c64(0.8, 0.1);
        assert_eq!(apply_eop(&op, &Power(3), x, &t).unwrap(), x.powi(3));
    }

    #[test]
    fn power_action_b2_plus() {
        // E_q(y D_q | q^2) x^n = x^n E_1(q^n y / x)
        let t = Truncation::default();
        let base = qb(0.4);
        let (x, y, n) = (c64(0.9, 0.3), c64(0.5, -0.2), 2);
        let op = EOpSpec::new(y, base, 2, Sign::Plus);
        let got = apply_eop(&op, &Power(n), x, &t).unwrap();
        let want = x.powi(n as i32) * e_b(base.q().powi(n as i32) * y / x, base, 1, &t).unwrap();
        assert!((got - want).norm() <= 1e-12 * want.norm());
    }

    #[test]
    fn theta_action_b1_minus() {
        // E_q(y D_{q^-1} | q) theta(a x) = theta(a x) (-a y; q)_inf
        let t = Truncation::default();
        let base = qb(0.35);
        let (a, x, y) = (c64(0.7, 0.2), c64(1.1, -0.3), c64(0.4, 0.3));
        let f = ScaledFn::new(move |s| theta_scaled(a * s, base, &Truncation::default()));
        let op = EOpSpec::new(y, base, 1, Sign::Minus);
        let got = apply_eop(&op, &f, x, &t).unwrap();
        let want = theta_scaled(a * x, base, &t).unwrap().to_complex() * qpoch_infinite(-a * y, base, &t).unwrap();
        assert!((got - want).norm() <= 1e-11 * want.norm());
    }

    #[test]
    fn divergence_is_reported() {
        // f(x) = 2^|x| grows doubly exponentially along x, x/q, x/q^2, ...
        let t = Truncation::default();
        let f = ScaledFn::new(|s: ComplexScalar| {
            Ok(Scaled::from(2.0).powi(s.norm().min(1e15) as i64))
        });
        let op = EOpSpec::new(c64(1.0, 0.0), qb(0.5), 0, Sign::Minus);
        let r = apply_eop(&op, &f, c64(1.0, 0.0), &t);
        assert!(matches!(r, Err(QError::Divergence(_))), "{r:?}");
    }
}
