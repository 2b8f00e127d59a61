//! C ABI over the `qseries` kernel.
//!
//! Every entry point returns a [`QsStatus`] and writes its result through an out-pointer.
//! Rust panics are caught at the boundary and reported as [`QsStatus::Panic`]. The message
//! of the most recent failure on the calling thread is available from [`qs_last_error`].
//!
//! Handles ([`QsContext`], [`QsReport`]) are opaque; create them with the matching `_new`
//! or producer call and release them with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qseries::hyperseries::{e_b_scaled, phi_scaled, psi_scaled};
use qseries::identities::{self, render_json, SuiteReport};
use qseries::qderivative::Power;
use qseries::qfactorial::{qpoch_finite_scaled, qpoch_infinite_scaled};
use qseries::qoperator::{apply_eop_scaled, EOpSpec, Sign};
use qseries::theta::{theta_series_scaled, ThetaArg};
use qseries::{c64, ComplexScalar, QBase, QError, Scaled, Truncation};

/// Result codes shared by every function in this library.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Pole = 4,
    BudgetExceeded = 5,
    Divergence = 6,
    Overflow = 7,
    UnknownIdentity = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QsComplex {
    pub re: f64,
    pub im: f64,
}

/// A computed value and the number of terms (or factors) the evaluation used.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QsValue {
    pub value: QsComplex,
    pub terms: usize,
}

/// Base `q` plus truncation policy.
pub struct QsContext {
    base: QBase,
    trunc: Truncation,
}

/// Result of a verification run, with its JSON rendering cached.
pub struct QsReport {
    report: SuiteReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

impl From<&QError> for QsStatus {
    fn from(e: &QError) -> Self {
        match e {
            QError::Domain(_) => QsStatus::Domain,
            QError::Pole(_) => QsStatus::Pole,
            QError::BudgetExceeded { .. } => QsStatus::BudgetExceeded,
            QError::Divergence(_) => QsStatus::Divergence,
            QError::Overflow(_) => QsStatus::Overflow,
            QError::InvalidArgument(_) => QsStatus::InvalidArgument,
            QError::UnknownIdentity(_) => QsStatus::UnknownIdentity,
        }
    }
}

enum Failure {
    Null(&'static str),
    Kernel(QError),
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        Failure::Kernel(e)
    }
}

/// Runs `body`, translating errors and panics into a status and recording the message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QsStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("{name} is a null pointer"));
            QsStatus::NullPointer
        }
        Ok(Err(Failure::Kernel(e))) => {
            set_error(e.to_string());
            QsStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic");
            QsStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn write<T>(out: *mut T, v: T, name: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(v);
    Ok(())
}

/// `len` values starting at `p`; a null `p` is allowed only when `len == 0`.
unsafe fn slice(p: *const QsComplex, len: usize, name: &'static str) -> Result<Vec<ComplexScalar>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, len).iter().map(|z| cx(*z)).collect())
}

fn cx(z: QsComplex) -> ComplexScalar {
    c64(z.re, z.im)
}

fn value(v: Scaled, terms: usize, what: &str) -> Result<QsValue, Failure> {
    if !v.is_valid() {
        return Err(QError::Domain(format!("{what} evaluated to an undefined value")).into());
    }
    let z = v
        .to_complex_checked()
        .ok_or_else(|| QError::Overflow(format!("{what} has magnitude 2^{:.0}", v.log2_abs())))?;
    Ok(QsValue { value: QsComplex { re: z.re, im: z.im }, terms })
}

/// Message for the last non-`Ok` status on this thread. The pointer stays valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a context for base `q`. Pass `eps <= 0` or `max_terms == 0` for the defaults
/// (1e-14 and 10000).
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_context_new(q: QsComplex, eps: f64, max_terms: usize, out: *mut *mut QsContext) -> QsStatus {
    guard(|| {
        let d = Truncation::default();
        let eps = if eps <= 0.0 { d.eps } else { eps };
        let max_terms = if max_terms == 0 { d.max_terms } else { max_terms };
        let ctx = QsContext { base: QBase::new(cx(q))?, trunc: Truncation::new(eps, max_terms, d.consecutive_small)? };
        write(out, Box::into_raw(Box::new(ctx)), "out")
    })
}

/// # Safety
/// `ctx` must be null or a pointer from [`qs_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_context_free(ctx: *mut QsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// `(a;q)_n` for any integer `n`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_qpoch(ctx: *const QsContext, a: QsComplex, n: i64, out: *mut QsValue) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let v = qpoch_finite_scaled(cx(a), c.base, n)?;
        write(out, value(v, n.unsigned_abs() as usize, "(a;q)_n")?, "out")
    })
}

/// `(a;q)_inf`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_qpoch_inf(ctx: *const QsContext, a: QsComplex, out: *mut QsValue) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let o = qpoch_infinite_scaled(cx(a), c.base, &c.trunc)?;
        write(out, value(o.value, o.terms, "(a;q)_inf")?, "out")
    })
}

/// Jacobi theta function `theta(x;q)` from its bilateral series.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_theta(ctx: *const QsContext, x: QsComplex, out: *mut QsValue) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let o = theta_series_scaled(ThetaArg::new(cx(x), c.base)?, &c.trunc)?;
        write(out, value(o.value, o.terms, "theta")?, "out")
    })
}

/// Basic hypergeometric series `r phi s` with `r = n_upper`, `s = n_lower`.
///
/// # Safety
/// `upper` and `lower` must point to `n_upper` and `n_lower` values (or be null when the
/// count is zero); `ctx` must be a live context and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_phi(
    ctx: *const QsContext,
    upper: *const QsComplex,
    n_upper: usize,
    lower: *const QsComplex,
    n_lower: usize,
    z: QsComplex,
    out: *mut QsValue,
) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let (up, lo) = (slice(upper, n_upper, "upper")?, slice(lower, n_lower, "lower")?);
        let o = phi_scaled(&up, &lo, c.base, cx(z), &c.trunc)?;
        write(out, value(o.value, o.terms, "phi")?, "out")
    })
}

/// Bilateral series `r psi s`; `terms` counts both tails.
///
/// # Safety
/// Same contract as [`qs_phi`].
#[no_mangle]
pub unsafe extern "C" fn qs_psi(
    ctx: *const QsContext,
    upper: *const QsComplex,
    n_upper: usize,
    lower: *const QsComplex,
    n_lower: usize,
    z: QsComplex,
    out: *mut QsValue,
) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let (up, lo) = (slice(upper, n_upper, "upper")?, slice(lower, n_lower, "lower")?);
        let o = psi_scaled(&up, &lo, c.base, cx(z), &c.trunc)?;
        write(out, value(o.value, o.positive_terms + o.negative_terms, "psi")?, "out")
    })
}

/// `E_b(y;q)`; `b = 2` gives `K_inf(y)`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_eb(ctx: *const QsContext, y: QsComplex, b: u32, out: *mut QsValue) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let o = e_b_scaled(cx(y), c.base, b, &c.trunc)?;
        write(out, value(o.value, o.terms, "E_b")?, "out")
    })
}

/// `E_q(y D_{q^sign} | q^b)` applied to `x^n`, evaluated at `x`. `sign` is `1` or `-1`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_eop_power(
    ctx: *const QsContext,
    y: QsComplex,
    b: u32,
    sign: i32,
    n: i64,
    x: QsComplex,
    out: *mut QsValue,
) -> QsStatus {
    guard(|| {
        let c = deref(ctx, "ctx")?;
        let op = EOpSpec::new(cx(y), c.base, b, Sign::from_i32(sign)?);
        let o = apply_eop_scaled(&op, &Power(n), cx(x), &c.trunc)?;
        write(out, value(o.value, o.terms, "operator value")?, "out")
    })
}

/// Number of registered identities.
#[no_mangle]
pub extern "C" fn qs_identity_count() -> usize {
    identities::registry().len()
}

/// Verifies one identity (`id` non-null) or the whole registry (`id` null). Uses the
/// truncation of `ctx` when given, otherwise the defaults.
///
/// # Safety
/// `id` must be null or a NUL-terminated string; `ctx` null or live; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qs_verify(
    id: *const c_char,
    n_samples: usize,
    seed: u64,
    tol: f64,
    ctx: *const QsContext,
    out: *mut *mut QsReport,
) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let trunc = ctx.as_ref().map(|c| c.trunc).unwrap_or_default();
        let cases: Vec<_> = if id.is_null() {
            identities::registry().iter().collect()
        } else {
            let id = CStr::from_ptr(id).to_string_lossy();
            vec![identities::find(&id).ok_or_else(|| QError::UnknownIdentity(id.into_owned()))?]
        };
        if n_samples == 0 {
            return Err(QError::InvalidArgument("n_samples must be at least 1".into()).into());
        }
        let report = identities::verify_cases(&cases, n_samples, seed, tol, &trunc)?;
        let json = CString::new(render_json(&report)?).map_err(|e| QError::InvalidArgument(e.to_string()))?;
        write(out, Box::into_raw(Box::new(QsReport { report, json })), "out")
    })
}

/// 1 if some expected-pass identity failed or errored, 0 otherwise (also for null).
///
/// # Safety
/// `report` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn qs_report_failed(report: *const QsReport) -> i32 {
    report.as_ref().is_some_and(|r| r.report.any_failure()) as i32
}

/// The JSON rendering, owned by the report. Null for a null report.
///
/// # Safety
/// `report` must be null or live; the string dies with the report.
#[no_mangle]
pub unsafe extern "C" fn qs_report_json(report: *const QsReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be null or a pointer from [`qs_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_report_free(report: *mut QsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
