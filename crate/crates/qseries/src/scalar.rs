//! Complex scalars, plus an extended-exponent variant for intermediate values.
//!
//! Operator and bilateral sums routinely multiply numbers like `q^{-k^2}` by
//! numbers like `q^{k^2}`. Each factor leaves the binary64 range long before
//! the product does, so intermediate arithmetic is carried in [`Scaled`]: a
//! binary64 complex mantissa paired with a separate power-of-two exponent.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

/// The universal value type.
pub type ComplexScalar = Complex64;

/// Shorthand constructor used throughout the crate.
#[inline]
pub fn c64(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

/// `m * 2^e` with `m` normalised so that `max(|re m|, |im m|)` lies in `[0.5, 1)`,
/// or `m == 0` (then `e == 0`). A non-finite mantissa marks an invalid value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    m: Complex64,
    e: i64,
}

/// Exponent `k` such that `x = f * 2^k` with `f` in `[0.5, 1)`. `x` must be finite and nonzero.
fn frexp_exp(x: f64) -> i64 {
    let bits = x.abs().to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal: rescale into the normal range first
        frexp_exp(x * f64::from_bits(0x43f0_0000_0000_0000)) - 64
    } else {
        raw - 1022
    }
}

/// `x * 2^k` without intermediate overflow for moderate `x`.
fn ldexp(mut x: f64, mut k: i64) -> f64 {
    const STEP: i64 = 1000;
    let up = f64::from_bits(((1023 + STEP) as u64) << 52);
    let down = f64::from_bits(((1023 - STEP) as u64) << 52);
    while k > STEP {
        x *= up;
        k -= STEP;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -STEP {
        x *= down;
        k += STEP;
        if x == 0.0 {
            return x;
        }
    }
    x * pow2(k)
}

/// `2^k` for `|k| <= 1000`, built directly from the bit pattern.
fn pow2(k: i64) -> f64 {
    debug_assert!((-1000..=1000).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { m: Complex64 { re: 0.0, im: 0.0 }, e: 0 };
    pub const ONE: Scaled = Scaled { m: Complex64 { re: 0.5, im: 0.0 }, e: 1 };

    fn normalized(m: Complex64, e: i64) -> Scaled {
        if !(m.re.is_finite() && m.im.is_finite()) {
            return Scaled { m: Complex64::new(f64::NAN, f64::NAN), e: 0 };
        }
        let big = m.re.abs().max(m.im.abs());
        if big == 0.0 {
            return Scaled::ZERO;
        }
        let k = frexp_exp(big);
        Scaled { m: Complex64::new(ldexp(m.re, -k), ldexp(m.im, -k)), e: e + k }
    }

    pub fn new(z: Complex64) -> Scaled {
        Scaled::normalized(z, 0)
    }

    pub fn from_real(x: f64) -> Scaled {
        Scaled::new(Complex64::new(x, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    /// False once any operation produced NaN or an infinite mantissa
    /// (division by zero, for instance).
    pub fn is_valid(&self) -> bool {
        self.m.re.is_finite() && self.m.im.is_finite()
    }

    /// `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.m.norm().log2() + self.e as f64
        }
    }

    /// Magnitude as a plain `f64` (saturates to `inf` / `0`).
    pub fn abs(&self) -> f64 {
        ldexp(self.m.norm(), self.e)
    }

    /// Convert back to binary64. Values outside the range saturate to
    /// infinity or flush to zero; use [`Scaled::to_complex_checked`] to detect that.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(ldexp(self.m.re, self.e), ldexp(self.m.im, self.e))
    }

    /// `None` when the value is invalid or overflows binary64.
    /// Underflow to zero is accepted: it is an accurate answer at this precision.
    pub fn to_complex_checked(&self) -> Option<Complex64> {
        if !self.is_valid() {
            return None;
        }
        let z = self.to_complex();
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }

    pub fn recip(self) -> Scaled {
        Scaled::ONE / self
    }

    pub fn powi(self, n: i64) -> Scaled {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self;
        let mut acc = Scaled::ONE;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    pub fn scale(self, f: f64) -> Scaled {
        Scaled::normalized(self.m * f, self.e)
    }
}

impl Default for Scaled {
    fn default() -> Self {
        Scaled::ZERO
    }
}

impl From<Complex64> for Scaled {
    fn from(z: Complex64) -> Self {
        Scaled::new(z)
    }
}

impl From<f64> for Scaled {
    fn from(x: f64) -> Self {
        Scaled::from_real(x)
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_complex_checked() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "({})*2^{}", self.m, self.e),
        }
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        if (self.is_zero() || rhs.is_zero())
            && self.is_valid() && rhs.is_valid() {
                return Scaled::ZERO;
            }
        Scaled::normalized(self.m * rhs.m, self.e + rhs.e)
    }
}

impl Mul<Complex64> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Complex64) -> Scaled {
        self * Scaled::new(rhs)
    }
}

impl MulAssign for Scaled {
    fn mul_assign(&mut self, rhs: Scaled) {
        *self = *self * rhs;
    }
}

impl MulAssign<Complex64> for Scaled {
    fn mul_assign(&mut self, rhs: Complex64) {
        *self = *self * rhs;
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        if rhs.is_zero() {
            return Scaled { m: Complex64::new(f64::NAN, f64::NAN), e: 0 };
        }
        if self.is_zero() && self.is_valid() && rhs.is_valid() {
            return Scaled::ZERO;
        }
        Scaled::normalized(self.m / rhs.m, self.e - rhs.e)
    }
}

impl Div<Complex64> for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Complex64) -> Scaled {
        self / Scaled::new(rhs)
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, rhs: Scaled) -> Scaled {
        if !self.is_valid() || !rhs.is_valid() {
            return Scaled { m: Complex64::new(f64::NAN, f64::NAN), e: 0 };
        }
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= rhs.e { (self, rhs) } else { (rhs, self) };
        let shift = hi.e - lo.e;
        if shift > 1100 {
            return hi;
        }
        let lo_m = Complex64::new(ldexp(lo.m.re, -shift), ldexp(lo.m.im, -shift));
        Scaled::normalized(hi.m + lo_m, hi.e)
    }
}

impl AddAssign for Scaled {
    fn add_assign(&mut self, rhs: Scaled) {
        *self = *self + rhs;
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled { m: -self.m, e: self.e }
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, rhs: Scaled) -> Scaled {
        self + (-rhs)
    }
}
