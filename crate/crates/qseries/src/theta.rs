//! The Jacobi theta function `theta(x;q) = sum_n q^{n(n+1)/2} x^n`.
//!
//! The product form `(q;q)_inf (-qx;q)_inf (-1/x;q)_inf` is the default
//! evaluation path. The bilateral series is kept for cross-validation.

use crate::error::{QError, QResult};
use crate::qfactorial::{finish, qpoch_infinite_scaled, Outcome, QBase, Truncation};
use crate::scalar::{ComplexScalar, Scaled};
use num_complex::Complex;
use twofloat::TwoFloat;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaArg {
    x: ComplexScalar,
    base: QBase,
}

impl ThetaArg {
    pub fn new(x: ComplexScalar, base: QBase) -> QResult<ThetaArg> {
        if x.norm() == 0.0 || !(x.re.is_finite() && x.im.is_finite()) {
            return Err(QError::Domain(format!("theta argument x = {x} must be finite and nonzero")));
        }
        Ok(ThetaArg { x, base })
    }

    pub fn x(&self) -> ComplexScalar {
        self.x
    }

    pub fn base(&self) -> QBase {
        self.base
    }
}

/// Bilateral series, summed in double-double precision.
///
/// Near the zeros of theta the series cancels to many orders below its largest term, so
/// binary64 summation loses digits the product form keeps. The argument is first moved
/// with `theta(x) = q^{k(k+1)/2} x^k theta(q^k x)` to `|q^k x|` near `|q|^{-1/2}`, where no
/// term exceeds 1. The shift is also done in double-double, since theta is ill-conditioned
/// in its argument exactly where the sum cancels. Each tail stops once `consecutive_small`
/// terms fall below `eps` times the current sum, or below the double-double resolution of
/// the largest term (which is what ends the sum at an exact zero such as `x = -1`).
pub fn theta_series(arg: ThetaArg, trunc: &Truncation) -> QResult<ComplexScalar> {
    finish(theta_series_scaled(arg, trunc)?.value, "theta series")
}

type Dd = Complex<TwoFloat>;

/// Terms below this fraction of the largest one cannot change a double-double sum.
const DD_FLOOR: f64 = 1e-33;

fn dd(z: ComplexScalar) -> Dd {
    Dd::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

/// Reciprocal refined by two Newton steps. The library's own division leaves an error near
/// 1e-17, which is enough to spoil the cancellation the double-double sum is there to absorb.
fn recip(z: Dd) -> Dd {
    let one = dd(ComplexScalar::new(1.0, 0.0));
    let mut r = dd(approx(z).inv());
    for _ in 0..2 {
        r = r + r * (one - z * r);
    }
    r
}

fn approx(z: Dd) -> ComplexScalar {
    ComplexScalar::new(f64::from(z.re), f64::from(z.im))
}

pub fn theta_series_scaled(arg: ThetaArg, trunc: &Truncation) -> QResult<Outcome> {
    let (x, q) = (arg.x, arg.base.q());
    if arg.base.is_zero() {
        // only n = 0 and n = -1 have q^0
        return Ok(Outcome { value: Scaled::ONE + Scaled::new(x).recip(), terms: 2 });
    }
    let lq = -q.norm().ln();
    let k = (x.norm().ln() / lq - 0.5).round();
    if k.abs() > trunc.max_terms as f64 {
        return Err(QError::BudgetExceeded { what: format!("theta argument reduction at x = {x}"), limit: trunc.max_terms });
    }
    let k = k as i64;
    let one = dd(ComplexScalar::new(1.0, 0.0));
    let qd = dd(q);
    let step = if k >= 0 { qd } else { recip(qd) };
    let y = (0..k.abs()).fold(dd(x), |acc, _| acc * step);
    let yinv = recip(y);
    let prefactor = Scaled::new(q).powi(k * (k + 1) / 2) * Scaled::new(x).powi(k);

    let mut sum = dd(ComplexScalar::new(0.0, 0.0));
    let mut peak = 0.0f64;
    let mut total = 0usize;
    // n >= 0: t_0 = 1, t_n = t_{n-1} q^n y
    // n <= -1: t_{-1} = 1/y, t_{-m} = t_{-m+1} q^{m-1} / y
    for positive in [true, false] {
        let mut t = if positive { one } else { yinv };
        let mut qn = one;
        let mut small = 0usize;
        let mut done = false;
        for _ in 0..trunc.max_terms {
            sum += t;
            total += 1;
            let mag = approx(t).norm();
            peak = peak.max(mag);
            if mag <= (trunc.eps * approx(sum).norm()).max(DD_FLOOR * peak) {
                small += 1;
                if small >= trunc.consecutive_small {
                    done = true;
                    break;
                }
            } else {
                small = 0;
            }
            qn *= qd;
            t = t * qn * if positive { y } else { yinv };
        }
        if !done {
            return Err(QError::BudgetExceeded {
                what: format!("theta series tail at x = {x}"),
                limit: trunc.max_terms,
            });
        }
    }
    Ok(Outcome { value: Scaled::new(approx(sum)) * prefactor, terms: total })
}

/// Triple-product form, computed in extended range so that large `|x|` does not overflow
/// before the final conversion.
pub fn theta_product(arg: ThetaArg, trunc: &Truncation) -> QResult<ComplexScalar> {
    finish(theta_product_scaled(arg, trunc)?, "theta product")
}

pub fn theta_product_scaled(arg: ThetaArg, trunc: &Truncation) -> QResult<Scaled> {
    let (x, base) = (arg.x, arg.base);
    let q = base.q();
    let a = qpoch_infinite_scaled(q, base, trunc)?.value;
    let b = qpoch_infinite_scaled(-q * x, base, trunc)?.value;
    let c = qpoch_infinite_scaled(-x.inv(), base, trunc)?.value;
    Ok(a * b * c)
}

/// Default evaluation path.
pub fn theta(arg: ThetaArg, trunc: &Truncation) -> QResult<ComplexScalar> {
    theta_product(arg, trunc)
}

/// `theta(x;q)` in extended range, for callers that feed it into larger products.
pub fn theta_scaled(x: ComplexScalar, base: QBase, trunc: &Truncation) -> QResult<Scaled> {
    theta_product_scaled(ThetaArg::new(x, base)?, trunc)
}
