use std::ffi::{CStr, CString};
use std::ptr;

use qseries_ffi::*;

fn c(re: f64, im: f64) -> QsComplex {
    QsComplex { re, im }
}

fn context(q: f64) -> *mut QsContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { qs_context_new(c(q, 0.0), 0.0, 0, &mut ctx) }, QsStatus::Ok);
    assert!(!ctx.is_null());
    ctx
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qs_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn finite_and_infinite_products() {
    let ctx = context(0.5);
    let mut v = QsValue::default();
    assert_eq!(unsafe { qs_qpoch(ctx, c(0.5, 0.0), 3, &mut v) }, QsStatus::Ok);
    assert_eq!(v.value, c(0.328125, 0.0));
    assert_eq!(v.terms, 3);

    assert_eq!(unsafe { qs_qpoch_inf(ctx, c(1.0, 0.0), &mut v) }, QsStatus::Ok);
    assert_eq!(v.value, c(0.0, 0.0));
    unsafe { qs_context_free(ctx) };
}

#[test]
fn phi_matches_the_binomial_product() {
    let ctx = context(0.4);
    let (mut lhs, mut num, mut den) = (QsValue::default(), QsValue::default(), QsValue::default());
    let upper = [c(0.3, 0.0)];
    unsafe {
        assert_eq!(qs_phi(ctx, upper.as_ptr(), 1, ptr::null(), 0, c(0.5, 0.0), &mut lhs), QsStatus::Ok);
        qs_qpoch_inf(ctx, c(0.15, 0.0), &mut num);
        qs_qpoch_inf(ctx, c(0.5, 0.0), &mut den);
        qs_context_free(ctx);
    }
    let want = num.value.re / den.value.re;
    assert!((lhs.value.re - want).abs() <= 1e-13 * want, "{} vs {want}", lhs.value.re);
}

#[test]
fn theta_vanishes_at_minus_one_and_psi_sums_both_tails() {
    let ctx = context(0.5);
    let mut v = QsValue::default();
    unsafe {
        assert_eq!(qs_theta(ctx, c(-1.0, 0.0), &mut v), QsStatus::Ok);
        assert!(v.value.re.abs() < 1e-14);
        let (up, lo) = ([c(0.3, 0.1)], [c(0.05, 0.0)]);
        assert_eq!(qs_psi(ctx, up.as_ptr(), 1, lo.as_ptr(), 1, c(0.5, 0.0), &mut v), QsStatus::Ok);
        assert!(v.terms > 2);
        qs_context_free(ctx);
    }
}

#[test]
fn eop_on_constant_is_the_constant() {
    let ctx = context(0.3);
    let mut v = QsValue::default();
    unsafe {
        assert_eq!(qs_eop_power(ctx, c(0.2, 0.0), 2, 1, 0, c(0.7, 0.0), &mut v), QsStatus::Ok);
        assert_eq!(qs_eop_power(ctx, c(0.2, 0.0), 2, 0, 0, c(0.7, 0.0), &mut v), QsStatus::InvalidArgument);
        qs_context_free(ctx);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { qs_context_new(c(1.5, 0.0), 0.0, 0, &mut ctx) }, QsStatus::InvalidArgument);
    assert!(ctx.is_null());
    assert!(last_error().contains("|q| < 1"), "{}", last_error());

    let ctx = context(0.4);
    let mut v = QsValue::default();
    let up = [c(0.3, 0.0)];
    unsafe {
        assert_eq!(qs_phi(ctx, up.as_ptr(), 1, ptr::null(), 0, c(2.0, 0.0), &mut v), QsStatus::Domain);
        assert_eq!(qs_phi(ctx, ptr::null(), 1, ptr::null(), 0, c(0.5, 0.0), &mut v), QsStatus::NullPointer);
        assert!(last_error().contains("upper"));
        assert_eq!(qs_theta(ptr::null(), c(0.5, 0.0), &mut v), QsStatus::NullPointer);
        assert_eq!(qs_theta(ctx, c(0.5, 0.0), ptr::null_mut()), QsStatus::NullPointer);
        qs_context_free(ctx);
        // a = q makes (a;q)_{-n} singular
        let half = context(0.5);
        let (pu, pl) = ([c(0.5, 0.0)], [c(0.2, 0.0)]);
        assert_eq!(qs_psi(half, pu.as_ptr(), 1, pl.as_ptr(), 1, c(0.5, 0.0), &mut v), QsStatus::Pole);
        qs_context_free(half);
    }

    let tight = {
        let mut t = ptr::null_mut();
        assert_eq!(unsafe { qs_context_new(c(0.4, 0.0), 0.0, 5, &mut t) }, QsStatus::Ok);
        t
    };
    unsafe {
        assert_eq!(qs_phi(tight, up.as_ptr(), 1, ptr::null(), 0, c(0.99, 0.0), &mut v), QsStatus::BudgetExceeded);
        qs_context_free(tight);
        qs_context_free(ptr::null_mut());
    }
}

#[test]
fn verify_one_identity_and_the_registry() {
    let id = CString::new("ramanujan-1psi1").unwrap();
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(qs_verify(id.as_ptr(), 10, 42, 1e-8, ptr::null(), &mut rep), QsStatus::Ok);
        assert_eq!(qs_report_failed(rep), 0);
        let json = CStr::from_ptr(qs_report_json(rep)).to_str().unwrap();
        assert!(json.contains("\"case_id\": \"ramanujan-1psi1\""));
        qs_report_free(rep);

        let nope = CString::new("nope").unwrap();
        assert_eq!(qs_verify(nope.as_ptr(), 10, 42, 1e-8, ptr::null(), &mut rep), QsStatus::UnknownIdentity);

        let mut all = ptr::null_mut();
        assert_eq!(qs_verify(ptr::null(), 2, 7, 1e-7, ptr::null(), &mut all), QsStatus::Ok);
        let json = CStr::from_ptr(qs_report_json(all)).to_str().unwrap();
        assert_eq!(json.matches("\"case_id\"").count(), qs_identity_count());
        assert_eq!(qs_report_failed(all), 0);
        qs_report_free(all);
        assert!(qs_report_json(ptr::null()).is_null());
    }
}
