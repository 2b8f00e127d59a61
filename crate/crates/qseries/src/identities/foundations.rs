//! Group A: shift rules for q-factorials, the triple product, the q-binomial theorem,
//! Ramanujan's 1psi1 sum and the Bailey-Daum sum.

use super::ctx::{c2, pw, q_ok};
use super::params::{Draw, Params, PARAM_MODULUS};
use super::{EvalCtx, Group, IdentityCase};
use crate::error::QResult;
use crate::scalar::{ComplexScalar, Scaled};
use crate::theta::{theta_product_scaled, theta_series_scaled, ThetaArg};

fn shift_sampler(d: &mut Draw) {
    d.q();
    d.c("a");
    d.int("n", 0, 6);
}

fn shift_valid(p: &Params) -> bool {
    let [q, a] = p.cs(["q", "a"]);
    q_ok(q) && a.norm() > 0.0 && (0..=6).contains(&p.i("n"))
}

fn shift_up_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a] = p.cs(["q", "a"]);
    cx.pinf(q.powi(p.i("n") as i32) * a)
}

fn shift_up_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let a = p.c("a");
    Ok(cx.pinf(a)? / cx.poch(a, p.i("n"))?)
}

fn shift_down_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a] = p.cs(["q", "a"]);
    cx.pinf(q.powi(-p.i("n") as i32) * a)
}

fn shift_down_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a] = p.cs(["q", "a"]);
    let n = p.i("n");
    Ok(pw(-a, n) * cx.qpow(-c2(n + 1)) * cx.poch(q / a, n)? * cx.pinf(a)?)
}

/// `(a; q^{-1})_n` as the literal product, since `q^{-1}` is not a valid base.
fn base_inverse_lhs(p: &Params, _cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a] = p.cs(["q", "a"]);
    let one = ComplexScalar::new(1.0, 0.0);
    Ok((0..p.i("n")).fold(Scaled::ONE, |acc, k| acc * (one - a * q.powi(-k as i32))))
}

fn base_inverse_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let a = p.c("a");
    let n = p.i("n");
    Ok(cx.qpow(-c2(n)) * pw(-a, n) * cx.poch(a.inv(), n)?)
}

fn triple_sampler(d: &mut Draw) {
    d.q();
    d.modulus("x", 0.2, 3.0);
}

fn triple_valid(p: &Params) -> bool {
    let [q, x] = p.cs(["q", "x"]);
    q_ok(q) && (0.2 - 1e-12..=3.0 + 1e-12).contains(&x.norm())
}

fn triple_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    Ok(theta_series_scaled(ThetaArg::new(p.c("x"), cx.base)?, &cx.trunc)?.value)
}

fn triple_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    theta_product_scaled(ThetaArg::new(p.c("x"), cx.base)?, &cx.trunc)
}

fn binomial_sampler(d: &mut Draw) {
    d.q();
    d.c("a");
    d.modulus("z", 0.1, 0.7);
}

fn binomial_valid(p: &Params) -> bool {
    let [q, z] = p.cs(["q", "z"]);
    q_ok(q) && z.norm() < 0.95
}

fn binomial_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [a, z] = p.cs(["a", "z"]);
    cx.phi(&[a], &[], z)
}

fn binomial_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [a, z] = p.cs(["a", "z"]);
    Ok(cx.pinf(a * z)? * cx.rinf(z)?)
}

/// `|b/a| < |z| < 1`, drawn as `b = a z w` with `|w| <= 1/2`.
fn ramanujan_sampler(d: &mut Draw) {
    d.q();
    let a = d.c("a");
    let z = d.modulus("z", 0.2, 0.7);
    let w = d.raw(0.1, 0.5);
    d.put("b", a * z * w);
}

fn ramanujan_valid(p: &Params) -> bool {
    let [q, a, b, z] = p.cs(["q", "a", "b", "z"]);
    q_ok(q) && a.norm() > 0.0 && b.norm() > 0.0 && (b / a).norm() * 1.05 < z.norm() && z.norm() < 0.95
}

fn ramanujan_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [a, b, z] = p.cs(["a", "b", "z"]);
    cx.psi(&[a], &[b], z)
}

fn ramanujan_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a, b, z] = p.cs(["q", "a", "b", "z"]);
    let num = cx.pinfs(&[q, b / a, a * z, q / (a * z)])?;
    let den = cx.rinf(b)? * cx.rinf(q / a)? * cx.rinf(z)? * cx.rinf(b / (a * z))?;
    Ok(num * den)
}

/// `|q/b| < 1` keeps the 2phi1 argument `-q/b` inside the unit disc.
fn bailey_sampler(d: &mut Draw) {
    let q = d.q().re;
    d.c("a");
    d.modulus("b", PARAM_MODULUS.0.max(1.15 * q), 0.95);
}

fn bailey_valid(p: &Params) -> bool {
    let [q, b] = p.cs(["q", "b"]);
    q_ok(q) && b.norm() > 0.0 && (q / b).norm() < 0.9
}

fn bailey_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a, b] = p.cs(["q", "a", "b"]);
    cx.phi(&[a, b], &[a * q / b], -q / b)
}

fn bailey_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, a, b] = p.cs(["q", "a", "b"]);
    let q2 = cx.base.squared();
    let num = cx.pinf(-q)? * cx.pinf_in(a * q, q2)? * cx.pinf_in(a * q * q / (b * b), q2)?;
    Ok(num * cx.rinf(a * q / b)? * cx.rinf(-q / b)?)
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        IdentityCase::new(
            "qpoch-shift-up",
            Group::A,
            r#"Shift rules: "$(q^{n}a;q)_{\infty}&=\frac{(a;q)_{\infty}}{(a;q)_{n}}$""#,
            shift_sampler,
            shift_valid,
            shift_up_lhs,
            shift_up_rhs,
        ),
        IdentityCase::new(
            "qpoch-shift-down",
            Group::A,
            r#"Shift rules: "$(q^{-n}a;q)_{\infty}&=\frac{(-a)^n}{q^{\binom{n+1}{2}}}(q/a;q)_{n}(a;q)_{\infty}$""#,
            shift_sampler,
            shift_valid,
            shift_down_lhs,
            shift_down_rhs,
        ),
        IdentityCase::new(
            "qpoch-base-inverse",
            Group::A,
            r#"Shift rules: "$(a;q^{-1})_{n}&=q^{-\binom{n}{2}}(-a)^{n}(a^{-1};q)_{n}$""#,
            shift_sampler,
            shift_valid,
            base_inverse_lhs,
            base_inverse_rhs,
        ),
        IdentityCase::new(
            "theta-triple-product",
            Group::A,
            "Jacobi theta function: \"has the following product representation\"",
            triple_sampler,
            triple_valid,
            triple_lhs,
            triple_rhs,
        ),
        IdentityCase::new(
            "q-binomial",
            Group::A,
            "q-binomial theorem, of which Ramanujan's sum is the \"bilateral extension\"",
            binomial_sampler,
            binomial_valid,
            binomial_lhs,
            binomial_rhs,
        ),
        IdentityCase::new(
            "ramanujan-1psi1",
            Group::A,
            "Introduction: \"Ramanujan's summation formula\"",
            ramanujan_sampler,
            ramanujan_valid,
            ramanujan_lhs,
            ramanujan_rhs,
        ),
        IdentityCase::new(
            "bailey-daum",
            Group::A,
            "Bailey-Daum: \"The Bailey-Daum summation formula is\"",
            bailey_sampler,
            bailey_valid,
            bailey_lhs,
            bailey_rhs,
        ),
    ]
}
