//! Shorthand evaluators used by the identity registry. Everything stays in extended
//! range so that both sides of an identity are compared without spurious overflow.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::QResult;
use crate::hyperseries::{bilateral_sum, e_b_scaled, phi_scaled, psi_scaled};
use crate::qderivative::{d_lambda_iter_scaled, Lambda, PointFunction, ScaledFn};
use crate::qfactorial::{qpoch_finite_scaled, qpoch_infinite_recip_scaled, qpoch_infinite_scaled, QBase, Truncation};
use crate::qoperator::{apply_eop_scaled, EOpSpec, Sign};
use crate::scalar::{ComplexScalar, Scaled};
use crate::theta::theta_scaled;

pub struct EvalCtx {
    pub base: QBase,
    pub trunc: Truncation,
    max_tail: AtomicUsize,
}

impl EvalCtx {
    pub fn new(base: QBase, trunc: Truncation) -> EvalCtx {
        EvalCtx { base, trunc, max_tail: AtomicUsize::new(0) }
    }

    pub fn q(&self) -> ComplexScalar {
        self.base.q()
    }

    /// Longest one-sided tail used by any bilateral sum so far, or 0.
    pub fn max_tail(&self) -> usize {
        self.max_tail.load(Ordering::Relaxed)
    }

    fn note_tail(&self, n: usize) {
        self.max_tail.fetch_max(n, Ordering::Relaxed);
    }

    /// `q^k` in extended range.
    pub fn qpow(&self, k: i64) -> Scaled {
        Scaled::from(self.q()).powi(k)
    }

    /// `(a;q)_inf`.
    pub fn pinf(&self, a: ComplexScalar) -> QResult<Scaled> {
        Ok(qpoch_infinite_scaled(a, self.base, &self.trunc)?.value)
    }

    /// `(a;p)_inf` in another base, e.g. `p = q^2`.
    pub fn pinf_in(&self, a: ComplexScalar, p: QBase) -> QResult<Scaled> {
        Ok(qpoch_infinite_scaled(a, p, &self.trunc)?.value)
    }

    /// `(a_1, ..., a_m; q)_inf`.
    pub fn pinfs(&self, a: &[ComplexScalar]) -> QResult<Scaled> {
        a.iter().try_fold(Scaled::ONE, |acc, &v| Ok(acc * self.pinf(v)?))
    }

    /// `1/(a;q)_inf`, reporting a pole.
    pub fn rinf(&self, a: ComplexScalar) -> QResult<Scaled> {
        Ok(qpoch_infinite_recip_scaled(a, self.base, &self.trunc)?.value)
    }

    /// `(a;q)_n` for any integer `n`.
    pub fn poch(&self, a: ComplexScalar, n: i64) -> QResult<Scaled> {
        qpoch_finite_scaled(a, self.base, n)
    }

    pub fn theta(&self, x: ComplexScalar) -> QResult<Scaled> {
        theta_scaled(x, self.base, &self.trunc)
    }

    pub fn phi(&self, upper: &[ComplexScalar], lower: &[ComplexScalar], z: ComplexScalar) -> QResult<Scaled> {
        Ok(phi_scaled(upper, lower, self.base, z, &self.trunc)?.value)
    }

    pub fn psi(&self, upper: &[ComplexScalar], lower: &[ComplexScalar], z: ComplexScalar) -> QResult<Scaled> {
        let b = psi_scaled(upper, lower, self.base, z, &self.trunc)?;
        self.note_tail(b.max_tail());
        Ok(b.value)
    }

    /// `sum_{n in Z} term(n)`.
    pub fn bil<F>(&self, what: &str, term: F) -> QResult<Scaled>
    where
        F: FnMut(i64) -> QResult<Scaled>,
    {
        let b = bilateral_sum(term, what, &self.trunc)?;
        self.note_tail(b.max_tail());
        Ok(b.value)
    }

    pub fn e(&self, b: u32, y: ComplexScalar) -> QResult<Scaled> {
        Ok(e_b_scaled(y, self.base, b, &self.trunc)?.value)
    }

    /// `D_q^k f(x)` for `sign = Plus`, `D_{q^-1}^k f(x)` for `Minus`.
    pub fn dq<F>(&self, sign: Sign, k: u32, x: ComplexScalar, f: F) -> QResult<Scaled>
    where
        F: Fn(ComplexScalar) -> QResult<Scaled> + Send + Sync,
    {
        let lam = match sign {
            Sign::Plus => self.q(),
            Sign::Minus => self.q().inv(),
        };
        d_lambda_iter_scaled(&ScaledFn::new(f), Lambda::new(lam)?, k, x)
    }

    /// `E_q(y D | q^b) f` at `x`.
    pub fn eop<F>(&self, b: u32, sign: Sign, y: ComplexScalar, x: ComplexScalar, f: F) -> QResult<Scaled>
    where
        F: Fn(ComplexScalar) -> QResult<Scaled> + Send + Sync,
    {
        let op = EOpSpec::new(y, self.base, b, sign);
        let f: &dyn PointFunction = &ScaledFn::new(f);
        Ok(apply_eop_scaled(&op, f, x, &self.trunc)?.value)
    }
}

// Small conveniences shared by the registry files.

pub(crate) fn sc(z: ComplexScalar) -> Scaled {
    Scaled::from(z)
}

/// `z^n` in extended range.
pub(crate) fn pw(z: ComplexScalar, n: i64) -> Scaled {
    Scaled::from(z).powi(n)
}

/// `(-1)^k`.
pub(crate) fn sgn(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

pub(crate) fn prod(v: &[ComplexScalar]) -> ComplexScalar {
    v.iter().product()
}

/// `v` followed by `n` zero parameters (none when `n <= 0`).
pub(crate) fn pad(v: &[ComplexScalar], n: i64) -> Vec<ComplexScalar> {
    let mut out = v.to_vec();
    out.extend(std::iter::repeat_n(ComplexScalar::new(0.0, 0.0), n.max(0) as usize));
    out
}

pub(crate) fn zeros(n: i64) -> Vec<ComplexScalar> {
    pad(&[], n)
}

/// Every element of `v` times `t`.
pub(crate) fn scale(v: &[ComplexScalar], t: ComplexScalar) -> Vec<ComplexScalar> {
    v.iter().map(|&a| a * t).collect()
}

/// `q` real with `0 < q < 1`, the range every registry sampler draws from.
pub(crate) fn q_ok(q: ComplexScalar) -> bool {
    q.im == 0.0 && q.re > 0.0 && q.re < 1.0
}

