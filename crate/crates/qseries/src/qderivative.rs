//! The lambda-derivative `(D_lambda f)(x) = f(lambda x) / x` and its iterates.
//!
//! Operands are plain pointwise functions; every rule of the calculus is checked by
//! evaluating both sides at sample points rather than by manipulating expressions.

use crate::error::{QError, QResult};
use crate::qfactorial::finish;
use crate::scalar::{ComplexScalar, Scaled};

/// A deterministic map `C -> C` that operators can be applied to.
///
/// `eval_scaled` exists for functions whose values leave binary64 range at the
/// arguments `q^{-k} x` an operator visits; the default just widens `eval`.
pub trait PointFunction: Send + Sync {
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar>;

    fn eval_scaled(&self, x: ComplexScalar) -> QResult<Scaled> {
        self.eval(x).map(Scaled::from)
    }

    /// Points where the function is undefined, for messages and listings.
    fn domain_note(&self) -> &str {
        ""
    }
}

impl<T: PointFunction + ?Sized> PointFunction for &T {
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar> {
        (**self).eval(x)
    }
    fn eval_scaled(&self, x: ComplexScalar) -> QResult<Scaled> {
        (**self).eval_scaled(x)
    }
    fn domain_note(&self) -> &str {
        (**self).domain_note()
    }
}

impl<T: PointFunction + ?Sized> PointFunction for Box<T> {
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar> {
        (**self).eval(x)
    }
    fn eval_scaled(&self, x: ComplexScalar) -> QResult<Scaled> {
        (**self).eval_scaled(x)
    }
    fn domain_note(&self) -> &str {
        (**self).domain_note()
    }
}

/// Wraps a closure returning binary64 values.
pub struct FnPoint<F> {
    f: F,
    note: String,
}

impl<F> FnPoint<F>
where
    F: Fn(ComplexScalar) -> QResult<ComplexScalar> + Send + Sync,
{
    pub fn new(f: F) -> Self {
        FnPoint { f, note: String::new() }
    }

    pub fn with_note(f: F, note: impl Into<String>) -> Self {
        FnPoint { f, note: note.into() }
    }
}

impl<F> PointFunction for FnPoint<F>
where
    F: Fn(ComplexScalar) -> QResult<ComplexScalar> + Send + Sync,
{
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar> {
        (self.f)(x)
    }
    fn domain_note(&self) -> &str {
        &self.note
    }
}

/// Wraps a closure that already works in extended range.
pub struct ScaledFn<F> {
    f: F,
    note: String,
}

impl<F> ScaledFn<F>
where
    F: Fn(ComplexScalar) -> QResult<Scaled> + Send + Sync,
{
    pub fn new(f: F) -> Self {
        ScaledFn { f, note: String::new() }
    }

    pub fn with_note(f: F, note: impl Into<String>) -> Self {
        ScaledFn { f, note: note.into() }
    }
}

impl<F> PointFunction for ScaledFn<F>
where
    F: Fn(ComplexScalar) -> QResult<Scaled> + Send + Sync,
{
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar> {
        finish((self.f)(x)?, "point function")
    }
    fn eval_scaled(&self, x: ComplexScalar) -> QResult<Scaled> {
        (self.f)(x)
    }
    fn domain_note(&self) -> &str {
        &self.note
    }
}

/// `sum_i c_i x^i`, evaluated by Horner's rule.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<ComplexScalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<ComplexScalar>) -> Self {
        Polynomial { coeffs }
    }
}

impl PointFunction for Polynomial {
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar> {
        Ok(self.coeffs.iter().rev().fold(ComplexScalar::new(0.0, 0.0), |acc, &c| acc * x + c))
    }
}

/// `x^n` for any integer `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Power(pub i64);

impl PointFunction for Power {
    fn eval(&self, x: ComplexScalar) -> QResult<ComplexScalar> {
        finish(self.eval_scaled(x)?, "x^n")
    }
    fn eval_scaled(&self, x: ComplexScalar) -> QResult<Scaled> {
        if self.0 < 0 && x.norm() == 0.0 {
            return Err(QError::Pole(format!("x^{} at x = 0", self.0)));
        }
        Ok(Scaled::from(x).powi(self.0))
    }
    fn domain_note(&self) -> &str {
        if self.0 < 0 {
            "x != 0"
        } else {
            ""
        }
    }
}

/// The dilation factor of `D_lambda`; zero is rejected because iterates divide by its powers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lambda(ComplexScalar);

impl Lambda {
    pub fn new(lam: ComplexScalar) -> QResult<Lambda> {
        if lam.norm() == 0.0 || !lam.norm().is_finite() {
            return Err(QError::Domain(format!("lambda = {lam} must be finite and nonzero")));
        }
        Ok(Lambda(lam))
    }

    pub fn value(&self) -> ComplexScalar {
        self.0
    }
}

fn check_x(x: ComplexScalar) -> QResult<()> {
    if x.norm() == 0.0 {
        return Err(QError::Domain("D_lambda is evaluated at x = 0".into()));
    }
    Ok(())
}

/// `f(lambda x) / x`.
pub fn d_lambda(f: &dyn PointFunction, lam: Lambda, x: ComplexScalar) -> QResult<ComplexScalar> {
    check_x(x)?;
    Ok(f.eval(lam.0 * x)? / x)
}

/// `D_lambda^n f(x) = f(lambda^n x) / (lambda^{C(n,2)} x^n)`.
pub fn d_lambda_iter(f: &dyn PointFunction, lam: Lambda, n: u32, x: ComplexScalar) -> QResult<ComplexScalar> {
    finish(d_lambda_iter_scaled(f, lam, n, x)?, "D_lambda^n f")
}

pub fn d_lambda_iter_scaled(f: &dyn PointFunction, lam: Lambda, n: u32, x: ComplexScalar) -> QResult<Scaled> {
    check_x(x)?;
    if n == 0 {
        return f.eval_scaled(x);
    }
    let arg = lam.0.powi(n as i32) * x;
    if !(arg.re.is_finite() && arg.im.is_finite()) || arg.norm() == 0.0 {
        return Err(QError::Overflow(format!("lambda^{n} x leaves binary64 range")));
    }
    let n = n as i64;
    let denom = Scaled::from(lam.0).powi(n * (n - 1) / 2) * Scaled::from(x).powi(n);
    Ok(f.eval_scaled(arg)? / denom)
}
