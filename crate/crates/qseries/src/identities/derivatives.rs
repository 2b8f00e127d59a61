//! Group B: closed forms for iterated q-derivatives of products, checked against direct
//! evaluation of `D^k f(x) = f(lambda^k x) / (lambda^{C(k,2)} x^k)`.

use super::ctx::{c2, prod, pw, q_ok, sc, sgn};
use super::params::{Draw, Params};
use super::{EvalCtx, Group, IdentityCase};
use crate::error::QResult;
use crate::qoperator::Sign;
use crate::scalar::{ComplexScalar, Scaled};

/// `(a t, q/(a t); q)_inf / (t, b/(a t); q)_inf`.
pub(super) fn ram(cx: &EvalCtx, a: ComplexScalar, b: ComplexScalar, t: ComplexScalar) -> QResult<Scaled> {
    let q = cx.q();
    Ok(cx.pinf(a * t)? * cx.pinf(q / (a * t))? * cx.rinf(t)? * cx.rinf(b / (a * t))?)
}

/// `prod (a t; q)_inf / prod (b t; q)_inf`.
pub(super) fn brk(cx: &EvalCtx, al: &[ComplexScalar], bl: &[ComplexScalar], t: ComplexScalar) -> QResult<Scaled> {
    let mut v = Scaled::ONE;
    for &a in al {
        v *= cx.pinf(a * t)?;
    }
    for &b in bl {
        v *= cx.rinf(b * t)?;
    }
    Ok(v)
}

/// `prod (u_i; q)_k / prod (v_i; q)_k`.
fn poch_ratio(cx: &EvalCtx, up: &[ComplexScalar], down: &[ComplexScalar], k: i64) -> QResult<Scaled> {
    let mut v = Scaled::ONE;
    for &u in up {
        v *= cx.poch(u, k)?;
    }
    for &w in down {
        v = v / cx.poch(w, k)?;
    }
    Ok(v)
}

fn common(d: &mut Draw) {
    d.q();
    d.x("x");
    d.int("k", 0, 4);
}

fn pow_sampler(d: &mut Draw) {
    common(d);
    d.c("a");
    d.int("n", -3, 3);
}

fn ab_sampler(d: &mut Draw) {
    pow_sampler(d);
    d.c("b");
}

fn ram_sampler(d: &mut Draw) {
    common(d);
    d.c("a");
    d.c("b");
}

fn ram_d_sampler(d: &mut Draw) {
    ram_sampler(d);
    d.modulus("d", 0.3, 1.2);
}

fn bracket_sampler(d: &mut Draw) {
    common(d);
    d.int("n", -3, 3);
    let r = d.int("r", 0, 2);
    let s = d.int("s", 0, 2);
    d.list("as", r as usize);
    d.list("bs", s as usize);
}

fn theta_sampler(d: &mut Draw) {
    common(d);
    d.x("a");
}

fn valid(p: &Params) -> bool {
    let [q, x] = p.cs(["q", "x"]);
    q_ok(q) && x.norm() > 0.0 && (0..=4).contains(&p.i("k"))
}

fn k_of(p: &Params) -> (i64, u32) {
    let k = p.i("k");
    (k, k as u32)
}

fn dq_pow_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    let n = p.i("n");
    cx.dq(Sign::Plus, k_of(p).1, x, |t| Ok(pw(t, n) * cx.pinf(a / t)?))
}

fn dq_pow_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a] = p.cs(["q", "x", "a"]);
    let (n, k) = (p.i("n"), p.i("k"));
    Ok(pw(x, n - 2 * k) * pw(-a, k) * cx.qpow(n * k - k * k) * cx.poch(q * x / a, k)? * cx.pinf(a / x)?)
}

fn dqinv_pow_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    let n = p.i("n");
    cx.dq(Sign::Minus, k_of(p).1, x, |t| Ok(pw(t, n) * cx.pinf(a / t)?))
}

fn dqinv_pow_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    let (n, k) = (p.i("n"), p.i("k"));
    Ok(pw(x, n - k) * cx.qpow(c2(k) - n * k) * cx.pinf(a / x)? / cx.poch(a / x, k)?)
}

fn dq_ram_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b] = p.cs(["x", "a", "b"]);
    cx.dq(Sign::Plus, k_of(p).1, x, |t| ram(cx, a, b, t))
}

/// Shared tail `q^{-C(k,2)} (x)_k / (qax/b)_k F(x)`.
fn dq_ram_core(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a, b] = p.cs(["q", "x", "a", "b"]);
    let k = p.i("k");
    Ok(cx.qpow(-c2(k)) * poch_ratio(cx, &[x], &[q * a * x / b], k)? * ram(cx, a, b, x)?)
}

fn dq_ram_stated(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    Ok(cx.qpow(p.i("k")) * dq_ram_core(p, cx)?)
}

fn dq_ram_fixed(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, b] = p.cs(["q", "x", "b"]);
    Ok(pw(q / (b * x), p.i("k")) * dq_ram_core(p, cx)?)
}

fn dqinv_ram_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b, d] = p.cs(["x", "a", "b", "d"]);
    cx.dq(Sign::Minus, k_of(p).1, x, |t| ram(cx, a, b, d * t))
}

fn dqinv_ram_stated(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a, b] = p.cs(["q", "x", "a", "b"]);
    let k = p.i("k");
    let pre = cx.qpow(c2(k)) * pw(a, k) * pw(x, -k);
    Ok(pre * poch_ratio(cx, &[b / (a * x)], &[q / x], k)? * ram(cx, a, b, x)?)
}

fn dqinv_ram_fixed(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a, b, d] = p.cs(["q", "x", "a", "b", "d"]);
    let k = p.i("k");
    let pre = cx.qpow(c2(k)) * pw(a, k) * pw(x, -k);
    Ok(pre * poch_ratio(cx, &[b / (a * d * x)], &[q / (d * x)], k)? * ram(cx, a, b, d * x)?)
}

fn dq_bracket_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let x = p.c("x");
    let n = p.i("n");
    let (al, bl) = (p.list("as"), p.list("bs"));
    cx.dq(Sign::Plus, k_of(p).1, x, |t| Ok(pw(t, n) * brk(cx, al, bl, t)?))
}

fn dq_bracket_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let x = p.c("x");
    let (n, k) = (p.i("n"), p.i("k"));
    let (al, bl) = (p.list("as"), p.list("bs"));
    let bx: Vec<_> = bl.iter().map(|&b| b * x).collect();
    let ax: Vec<_> = al.iter().map(|&a| a * x).collect();
    Ok(pw(x, n - k) * cx.qpow(k * n - c2(k)) * poch_ratio(cx, &bx, &ax, k)? * brk(cx, al, bl, x)?)
}

fn dqinv_bracket_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let x = p.c("x");
    let n = p.i("n");
    let (al, bl) = (p.list("as"), p.list("bs"));
    cx.dq(Sign::Minus, k_of(p).1, x, |t| Ok(pw(t, n) * brk(cx, al, bl, t)?))
}

fn dqinv_bracket_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x] = p.cs(["q", "x"]);
    let (n, k) = (p.i("n"), p.i("k"));
    let (al, bl) = (p.list("as"), p.list("bs"));
    let (r, s) = (al.len() as i64, bl.len() as i64);
    let balance = (cx.qpow(c2(k)).scale(sgn(k))).powi(1 + s - r);
    let ratio = sc(-(prod(al) / prod(bl))) * cx.qpow(s - r - n) * pw(x, r - s - 1);
    let up: Vec<_> = al.iter().map(|&a| q / (a * x)).collect();
    let down: Vec<_> = bl.iter().map(|&b| q / (b * x)).collect();
    Ok(pw(x, n) * balance * ratio.powi(k) * poch_ratio(cx, &up, &down, k)? * brk(cx, al, bl, x)?)
}

fn dqinv_ax_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    let n = p.i("n");
    cx.dq(Sign::Minus, k_of(p).1, x, |t| Ok(pw(t, n) * cx.pinf(a * t)?))
}

fn dqinv_ax_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a] = p.cs(["q", "x", "a"]);
    let (n, k) = (p.i("n"), p.i("k"));
    Ok(pw(x, n) * (sc(-a) * cx.qpow(-n - 1)).powi(k) * cx.poch(q / (a * x), k)? * cx.pinf(a * x)?)
}

fn dqinv_recip_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    let n = p.i("n");
    cx.dq(Sign::Minus, k_of(p).1, x, |t| Ok(pw(t, n) * cx.rinf(a * t)?))
}

fn dqinv_recip_stated(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a] = p.cs(["q", "x", "a"]);
    let (n, k) = (p.i("n"), p.i("k"));
    let v = pw(x, n - 2 * k) * cx.qpow(2 * c2(k) - (n - 1) * k) / pw(a, k);
    Ok(v / cx.poch(q / (a * x), k)? * cx.rinf(a * x)?)
}

fn dqinv_recip_fixed(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    Ok(dqinv_recip_stated(p, cx)?.scale(sgn(p.i("k"))))
}

fn dqinv_ratio_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b] = p.cs(["x", "a", "b"]);
    let n = p.i("n");
    cx.dq(Sign::Minus, k_of(p).1, x, |t| Ok(pw(t, n) * cx.pinf(a * t)? * cx.rinf(b * t)?))
}

fn dqinv_ratio_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, a, b] = p.cs(["q", "x", "a", "b"]);
    let (n, k) = (p.i("n"), p.i("k"));
    let pre = cx.qpow(c2(k) - n * k) * pw(a / b, k) * pw(x, n - k);
    Ok(pre * poch_ratio(cx, &[q / (a * x)], &[q / (b * x)], k)? * cx.pinf(a * x)? * cx.rinf(b * x)?)
}

fn theta_dq_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    cx.dq(Sign::Plus, k_of(p).1, x, |t| cx.theta(a * t))
}

fn theta_dq_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    let k = p.i("k");
    Ok(cx.theta(a * x)? / (pw(a * x * x, k) * cx.qpow(k * k)))
}

fn theta_dqinv_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    cx.dq(Sign::Minus, k_of(p).1, x, |t| cx.theta(a * t))
}

fn theta_dqinv_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a] = p.cs(["x", "a"]);
    Ok(pw(a, p.i("k")) * cx.theta(a * x)?)
}

pub(super) fn cases() -> Vec<IdentityCase> {
    const LEMMA1: &str = r#"Lemma 1: "$\mathbf{D}_{q}^k\{x^n(a/x;q)_{\infty}\}$""#;
    const LEMMA2: &str = r#"Lemma 2: "$(ax,q/ax;q)_{\infty}$""#;
    const LEMMA3: &str = r#"Lemma 3: "For all $k\in\mathbb{N}$ we have""#;
    const THETA: &str = r#"Proposition on theta derivatives: "$\frac{\vartheta(ax;q)}{(ax^2)^nq^{n^2}}$""#;

    let dq_ram = IdentityCase::new("dq-ramkernel", Group::B, LEMMA2, ram_sampler, valid, dq_ram_lhs, dq_ram_stated)
        .flag("prefactor q^k fails; the derivative produces (q/(bx))^k");
    let dqinv_ram =
        IdentityCase::new("dqinv-ramkernel", Group::B, LEMMA2, ram_d_sampler, valid, dqinv_ram_lhs, dqinv_ram_stated)
            .flag("left side differentiates F(dx) but the right side is written in x");
    let recip = IdentityCase::new(
        "dqinv-recip-ax",
        Group::B,
        r#"Corollary after Lemma 3: "$\mathbf{D}_{q^{-1}}^{k}\left\{x^n\frac{1}{(ax;q)_{\infty}}\right\}$""#,
        pow_sampler,
        valid,
        dqinv_recip_lhs,
        dqinv_recip_stated,
    )
    .flag("missing the sign (-1)^k");

    vec![
        IdentityCase::new("dq-pow-prodinf", Group::B, LEMMA1, pow_sampler, valid, dq_pow_lhs, dq_pow_rhs),
        IdentityCase::new("dqinv-pow-prodinf", Group::B, LEMMA1, pow_sampler, valid, dqinv_pow_lhs, dqinv_pow_rhs),
        dq_ram,
        dq_ram.corrected("dq-ramkernel-corrected", "prefactor (q/(bx))^k", dq_ram_lhs, dq_ram_fixed),
        dqinv_ram,
        dqinv_ram.corrected(
            "dqinv-ramkernel-corrected",
            "right side written in dx: (b/(adx))_k/(q/(dx))_k F(dx)",
            dqinv_ram_lhs,
            dqinv_ram_fixed,
        ),
        IdentityCase::new("dq-bracket", Group::B, LEMMA3, bracket_sampler, valid, dq_bracket_lhs, dq_bracket_rhs),
        IdentityCase::new("dqinv-bracket", Group::B, LEMMA3, bracket_sampler, valid, dqinv_bracket_lhs, dqinv_bracket_rhs),
        IdentityCase::new(
            "dqinv-ax",
            Group::B,
            r#"Corollary after Lemma 3: "$\mathbf{D}_{q^{-1}}^{k}\left\{x^n(ax;q)_{\infty}\right\}$""#,
            pow_sampler,
            valid,
            dqinv_ax_lhs,
            dqinv_ax_rhs,
        ),
        recip,
        recip.corrected("dqinv-recip-ax-corrected", "with the sign (-1)^k", dqinv_recip_lhs, dqinv_recip_fixed),
        IdentityCase::new(
            "dqinv-ratio",
            Group::B,
            r#"Corollary after Lemma 3: "$\mathbf{D}_{q^{-1}}^{k}\left\{x^n\frac{(ax;q)_{\infty}}{(bx;q)_{\infty}}\right\}$""#,
            ab_sampler,
            valid,
            dqinv_ratio_lhs,
            dqinv_ratio_rhs,
        ),
        IdentityCase::new("theta-dq", Group::B, THETA, theta_sampler, valid, theta_dq_lhs, theta_dq_rhs),
        IdentityCase::new(
            "theta-dqinv",
            Group::B,
            r#"Proposition on theta derivatives: "$\mathbf{D}_{q^{-1}}^n\vartheta(ax;q)$""#,
            theta_sampler,
            valid,
            theta_dqinv_lhs,
            theta_dqinv_rhs,
        ),
    ]
}
