//! Group C: closed forms for `E_q(y D_{q^{+-1}} | q^b)` applied to powers, theta functions
//! and products. The left side always sums the operator series term by term.

use super::ctx::{pad, prod, pw, q_ok, scale, sgn, zeros};
use super::derivatives::{brk, ram};
use super::params::{Draw, Params};
use super::{EvalCtx, Group, IdentityCase};
use crate::error::QResult;
use crate::qoperator::Sign;
use crate::scalar::{c64, ComplexScalar, Scaled};

use Sign::{Minus, Plus};

fn ui(k: i64) -> u32 {
    k as u32
}

/// `E_q(y D | q^b) f` at the sample's `x` and `y`.
fn op<F>(p: &Params, cx: &EvalCtx, b: i64, sign: Sign, f: F) -> QResult<Scaled>
where
    F: Fn(ComplexScalar) -> QResult<Scaled> + Send + Sync,
{
    cx.eop(ui(b), sign, p.c("y"), p.c("x"), f)
}

/// `q`, `x` and `y` with the default ranges (`x` from `[lo, 1.5]`).
fn base(d: &mut Draw, x_lo: f64) -> (ComplexScalar, ComplexScalar, ComplexScalar) {
    let q = d.q();
    let x = d.modulus("x", x_lo, 1.5);
    let y = d.c("y");
    (q, x, y)
}

/// Like [`base`] but with the smaller `y` range used for the kernel identities.
fn base_small_y(d: &mut Draw, x_lo: f64) -> (ComplexScalar, ComplexScalar, ComplexScalar) {
    let q = d.q();
    let x = d.modulus("x", x_lo, 1.5);
    let y = d.modulus("y", 0.05, 0.5);
    (q, x, y)
}

/// Shrink `y` until `|y * ratio| < lim` for every ratio, then record it.
fn fit_y(d: &mut Draw, y: ComplexScalar, ratios: &[ComplexScalar], lim: f64) -> ComplexScalar {
    let worst = ratios.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let y = Draw::shrink(y, c64(worst, 0.0), lim);
    d.put("y", y)
}

fn ok(p: &Params) -> bool {
    let [q, x, y] = p.cs(["q", "x", "y"]);
    q_ok(q) && x.norm() > 0.0 && y.norm() > 0.0
}

/// Common validator plus `|z| < lim` for a derived series argument.
fn ok_lt(p: &Params, z: ComplexScalar, lim: f64) -> bool {
    ok(p) && z.norm() < lim
}

fn qn(p: &Params, e: i64) -> ComplexScalar {
    p.c("q").powi(e as i32)
}

// Ramanujan-kernel helpers: f(t) = t^n F(t) and f(t) = theta(d t) F(t).

fn ram_draw(d: &mut Draw, x_lo: f64) -> (ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar) {
    let (q, x, y) = base_small_y(d, x_lo);
    let a = d.modulus("a", 0.3, 0.9);
    let b = d.c("b");
    (q, x, y, a, b)
}

fn ram_pow(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let [a, b] = p.cs(["a", "b"]);
    let n = p.i("n");
    op(p, cx, c, sign, |t| Ok(pw(t, n) * ram(cx, a, b, t)?))
}

fn ram_theta(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let [a, b, d] = p.cs(["a", "b", "d"]);
    op(p, cx, c, sign, |t| Ok(cx.theta(d * t)? * ram(cx, a, b, t)?))
}

fn ram_pow_pre(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b] = p.cs(["x", "a", "b"]);
    Ok(pw(x, p.i("n")) * ram(cx, a, b, x)?)
}

fn ram_theta_pre(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b, d] = p.cs(["x", "a", "b", "d"]);
    Ok(cx.theta(d * x)? * ram(cx, a, b, x)?)
}

// Bracket helpers: f(t) = t^n prod (a t)_inf / prod (b t)_inf and f(t) = theta(d t) * bracket.

fn lists(p: &Params) -> (&[ComplexScalar], &[ComplexScalar]) {
    (p.list("as"), p.list("bs"))
}

fn bracket_pow(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let (al, bl) = lists(p);
    let n = p.i("n");
    op(p, cx, c, sign, |t| Ok(pw(t, n) * brk(cx, al, bl, t)?))
}

fn bracket_theta(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let (al, bl) = lists(p);
    let d = p.c("d");
    op(p, cx, c, sign, |t| Ok(cx.theta(d * t)? * brk(cx, al, bl, t)?))
}

/// `q^{s-r} y A / (x^{s-r} B)` with `A`, `B` the products of the list parameters.
fn bracket_qinv_core(p: &Params) -> ComplexScalar {
    let [q, x, y] = p.cs(["q", "x", "y"]);
    let (al, bl) = lists(p);
    let e = bl.len() as i32 - al.len() as i32;
    q.powi(e) * y * prod(al) / (x.powi(e) * prod(bl))
}

fn bracket_qinv_z(p: &Params) -> ComplexScalar {
    let (c, n) = (p.i("c"), p.i("n"));
    bracket_qinv_core(p) * sgn(c + 1) * qn(p, -n) / p.c("x")
}

fn bracket_theta_qinv_z(p: &Params, with_d: bool) -> ComplexScalar {
    let z = bracket_qinv_core(p) * sgn(p.i("c"));
    if with_d {
        z * p.c("d")
    } else {
        z
    }
}

fn recip(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let a = p.c("a");
    let n = p.i("n");
    op(p, cx, c, sign, |t| Ok(pw(t, n) * cx.rinf(a * t)?))
}

fn ax(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let a = p.c("a");
    let n = p.i("n");
    op(p, cx, c, sign, |t| Ok(pw(t, n) * cx.pinf(a * t)?))
}

fn ratio(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let [a, b] = p.cs(["a", "b"]);
    let n = p.i("n");
    op(p, cx, c, sign, |t| Ok(pw(t, n) * cx.pinf(a * t)? * cx.rinf(b * t)?))
}

fn ratio_pre(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b] = p.cs(["x", "a", "b"]);
    Ok(pw(x, p.i("n")) * cx.pinf(a * x)? * cx.rinf(b * x)?)
}

fn theta_ratio(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let [a, b, d] = p.cs(["a", "b", "d"]);
    op(p, cx, c, sign, |t| Ok(cx.theta(d * t)? * cx.pinf(a * t)? * cx.rinf(b * t)?))
}

fn theta_ratio_pre(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, b, d] = p.cs(["x", "a", "b", "d"]);
    Ok(cx.theta(d * x)? * cx.pinf(a * x)? * cx.rinf(b * x)?)
}

fn prodinf_pow(p: &Params, cx: &EvalCtx, b: i64, sign: Sign) -> QResult<Scaled> {
    let a = p.c("a");
    let n = p.i("n");
    op(p, cx, b, sign, |t| Ok(pw(t, n) * cx.pinf(a / t)?))
}

fn prodinf_theta(p: &Params, cx: &EvalCtx, b: i64, sign: Sign) -> QResult<Scaled> {
    let [a, c] = p.cs(["a", "c"]);
    op(p, cx, b, sign, |t| Ok(cx.pinf(a / t)? * cx.theta(c * t)?))
}

fn prodinf_theta_pre(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [x, a, c] = p.cs(["x", "a", "c"]);
    Ok(cx.theta(c * x)? * cx.pinf(a / x)?)
}

fn theta_a(p: &Params, cx: &EvalCtx, b: i64, sign: Sign) -> QResult<Scaled> {
    let a = p.c("a");
    op(p, cx, b, sign, |t| cx.theta(a * t))
}

fn theta_b_ax(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let [a, b] = p.cs(["a", "b"]);
    op(p, cx, c, sign, |t| Ok(cx.theta(b * t)? * cx.pinf(a * t)?))
}

fn theta_b_recip(p: &Params, cx: &EvalCtx, c: i64, sign: Sign) -> QResult<Scaled> {
    let [a, b] = p.cs(["a", "b"]);
    op(p, cx, c, sign, |t| Ok(cx.theta(b * t)? * cx.rinf(a * t)?))
}

fn sign_of(p: &Params) -> Sign {
    if p.i("sign") > 0 {
        Plus
    } else {
        Minus
    }
}

fn theorems() -> Vec<IdentityCase> {
    let mut v = Vec::new();

    v.push(IdentityCase::new(
        "eop-power",
        Group::C,
        r#"Operator on powers: "$E_{q}(y\mathbf{D}_{q^{\pm}}|q^b)\{x^{n}\}=x^n\mathrm{E}_{b\mp1}(q^{\pm n}y/x;q)$""#,
        |d| {
            let (q, x, y) = base(d, 0.3);
            let n = d.int("n", -3, 3);
            let plus = d.int("sign", 0, 1) == 1;
            d.put_int("sign", if plus { 1 } else { -1 });
            let b = if plus { d.int("b", 1, 4) } else { d.int("b", 0, 3) };
            if plus && b == 1 {
                fit_y(d, y, &[q.powi(n as i32) / x], 0.5);
            }
        },
        |p| {
            let (n, b) = (p.i("n"), p.i("b"));
            let z = qn(p, n) * p.c("y") / p.c("x");
            ok(p) && (p.i("sign") < 0 || b > 1 || z.norm() < 0.55)
        },
        |p, cx| {
            let n = p.i("n");
            op(p, cx, p.i("b"), sign_of(p), |t| Ok(pw(t, n)))
        },
        |p, cx| {
            let [x, y] = p.cs(["x", "y"]);
            let (n, b, s) = (p.i("n"), p.i("b"), p.i("sign"));
            Ok(pw(x, n) * cx.e(ui(b - s), qn(p, s * n) * y / x)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-q",
        Group::C,
        r#"Operator on theta: "$\mathrm{E}_{q}(y\mathbf{D}_{q}|q^b)\{\vartheta(ax;q)\}&=\vartheta(ax;q)\mathrm{E}_{b-2}(y/qax^2;q)$""#,
        |d| {
            let (q, x, y) = base(d, 0.5);
            let a = d.x("a");
            if d.int("b", 2, 5) == 2 {
                fit_y(d, y, &[1.0 / (q * a * x * x)], 0.5);
            }
        },
        |p| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            ok(p) && (p.i("b") > 2 || (y / (q * a * x * x)).norm() < 0.55)
        },
        |p, cx| theta_a(p, cx, p.i("b"), Plus),
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            Ok(cx.theta(a * x)? * cx.e(ui(p.i("b") - 2), y / (q * a * x * x))?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-qinv",
        Group::C,
        r#"Operator on theta: "$\mathrm{E}_{q}(y\mathbf{D}_{q^{-1}}|q^b)\{\vartheta(ax;q)\}=\vartheta(ax;q)\mathrm{E}_{b}(ay;q)$""#,
        |d| {
            let (_, _, y) = base(d, 0.3);
            let a = d.modulus("a", 0.3, 1.1);
            if d.int("b", 0, 3) == 0 {
                fit_y(d, y, &[a], 0.5);
            }
        },
        |p| {
            let [y, a] = p.cs(["y", "a"]);
            ok(p) && (p.i("b") > 0 || (a * y).norm() < 0.55)
        },
        |p, cx| theta_a(p, cx, p.i("b"), Minus),
        |p, cx| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            Ok(cx.theta(a * x)? * cx.e(ui(p.i("b")), a * y)?)
        },
    ));

    // f(t) = t^n (a/t)_inf
    let q2 = IdentityCase::new(
        "eop-prodinf-q2",
        Group::C,
        r#"Operator on (a/x)_inf: "$x^n\frac{(-ay/qx^2;q)_{n}}{(-y/x;q)_{n}}$""#,
        |d| {
            let (q, x, y) = base(d, 0.5);
            let a = d.c("a");
            let n = d.int("n", -3, 3);
            fit_y(d, y, &[q.powi(n as i32 - 1) * a / (x * x)], 0.5);
        },
        |p| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            ok_lt(p, qn(p, p.i("n") - 1) * a * y / (x * x), 0.55)
        },
        |p, cx| prodinf_pow(p, cx, 2, Plus),
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            let n = p.i("n");
            let (u, w) = (-a * y / (q * x * x), -y / x);
            Ok(pw(x, n) * cx.poch(u, n)? / cx.poch(w, n)? * cx.pinf(w)? * cx.rinf(u)?)
        },
    )
    .flag("the right side omits the factor (a/x;q)_inf");
    v.push(q2);
    v.push(q2.corrected(
        "eop-prodinf-q2-corrected",
        "right side multiplied by (a/x;q)_inf",
        q2.lhs,
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            let n = p.i("n");
            let (u, w) = (-a * y / (q * x * x), -y / x);
            let v = pw(x, n) * cx.poch(u, n)? / cx.poch(w, n)? * cx.pinf(w)? * cx.rinf(u)?;
            Ok(v * cx.pinf(a / x)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-prodinf-qb",
        Group::C,
        r#"Operator on (a/x)_inf: "${}_{1}\phi_{b-2}$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.int("n", -3, 3);
            d.int("b", 3, 6);
        },
        ok,
        |p, cx| prodinf_pow(p, cx, p.i("b"), Plus),
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            let (n, b) = (p.i("n"), p.i("b"));
            let z = qn(p, n - 1) * a * y / (x * x) * sgn(b - 1);
            Ok(pw(x, n) * cx.pinf(a / x)? * cx.phi(&[q * x / a], &zeros(b - 2), z)?)
        },
    ));

    let qinv = IdentityCase::new(
        "eop-prodinf-qinv",
        Group::C,
        r#"Operator on (a/x)_inf: "$(-1)^{b+1}ay/q^nx$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.int("n", -3, 3);
            d.int("b", 0, 3);
        },
        ok,
        |p, cx| prodinf_pow(p, cx, p.i("b"), Minus),
        |p, cx| prodinf_qinv_rhs(p, cx, p.c("a")),
    )
    .flag("the series argument carries a spurious factor a");
    v.push(qinv);
    v.push(qinv.corrected(
        "eop-prodinf-qinv-corrected",
        "argument (-1)^{b+1} y/(q^n x)",
        qinv.lhs,
        |p, cx| prodinf_qinv_rhs(p, cx, c64(1.0, 0.0)),
    ));

    // f(t) = (a/t)_inf theta(c t)
    v.push(IdentityCase::new(
        "eop-prodinf-theta-q3",
        Group::C,
        r#"Operator on theta times (a/x)_inf: "$\vartheta(cx;q)\frac{(a/x;q)_{\infty}(-y/qcx^2;q)_{\infty}}{(-ay/q^2cx^3;q)_{\infty}}$""#,
        |d| {
            let (q, x, y) = base(d, 0.5);
            let a = d.c("a");
            let c = d.x("c");
            fit_y(d, y, &[a / (q * q * c * x * x * x)], 0.5);
        },
        |p| {
            let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
            ok_lt(p, a * y / (q * q * c * x * x * x), 0.55)
        },
        |p, cx| prodinf_theta(p, cx, 3, Plus),
        |p, cx| {
            let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
            let v = prodinf_theta_pre(p, cx)? * cx.pinf(-y / (q * c * x * x))?;
            Ok(v * cx.rinf(-a * y / (q * q * c * x * x * x))?)
        },
    ));

    let tqb = IdentityCase::new(
        "eop-prodinf-theta-qb",
        Group::C,
        r#"Operator on theta times (a/x)_inf: "${}_{1}\phi_{b-3}$""#,
        |d| {
            base(d, 0.5);
            d.c("a");
            d.x("c");
            d.int("b", 4, 7);
        },
        ok,
        |p, cx| prodinf_theta(p, cx, p.i("b"), Plus),
        |p, cx| prodinf_theta_qb_rhs(p, cx, false),
    )
    .flag("the series argument is missing a factor 1/q^2");
    v.push(tqb);
    v.push(tqb.corrected(
        "eop-prodinf-theta-qb-corrected",
        "argument (-1)^{b-2} a y/(q^2 c x^3)",
        tqb.lhs,
        |p, cx| prodinf_theta_qb_rhs(p, cx, true),
    ));

    v.push(IdentityCase::new(
        "eop-prodinf-theta-qinv0",
        Group::C,
        r#"Operator on theta times (a/x)_inf: "$;q,cy$""#,
        |d| {
            let (_, _, y) = base(d, 0.3);
            d.c("a");
            let c = d.modulus("c", 0.3, 1.1);
            fit_y(d, y, &[c], 0.5);
        },
        |p| {
            let [y, c] = p.cs(["y", "c"]);
            ok_lt(p, c * y, 0.55)
        },
        |p, cx| prodinf_theta(p, cx, 0, Minus),
        |p, cx| {
            let [x, y, a, c] = p.cs(["x", "y", "a", "c"]);
            let z0 = c64(0.0, 0.0);
            Ok(prodinf_theta_pre(p, cx)? * cx.phi(&[z0, z0], &[a / x], c * y)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-prodinf-theta-qinvb",
        Group::C,
        r#"Operator on theta times (a/x)_inf: "$;q,(-1)^bcy$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.modulus("c", 0.3, 1.1);
            d.int("b", 1, 4);
        },
        ok,
        |p, cx| prodinf_theta(p, cx, p.i("b"), Minus),
        |p, cx| {
            let [x, y, a, c] = p.cs(["x", "y", "a", "c"]);
            let b = p.i("b");
            let z = c * y * sgn(b);
            Ok(prodinf_theta_pre(p, cx)? * cx.phi(&zeros(1), &pad(&[a / x], b - 1), z)?)
        },
    ));

    // f(t) = t^n F(t), F the Ramanujan kernel
    let rq = IdentityCase::new(
        "eop-ramkernel-q",
        Group::C,
        r#"Operator on the Ramanujan kernel: "${}_{2}\phi_{1}\left(\begin{array}{c}x,0\\qax/b\end{array};q,q^{n+1}y\right)$""#,
        |d| {
            let (q, x, y, _, b) = ram_draw(d, 0.3);
            let n = d.int("n", -3, 3);
            let qn1 = q.powi(n as i32 + 1);
            fit_y(d, y, &[qn1, qn1 / (b * x)], 0.5);
        },
        |p| {
            let [x, y, b] = p.cs(["x", "y", "b"]);
            let z = qn(p, p.i("n") + 1) * y;
            ok_lt(p, z, 0.55) && (z / (b * x)).norm() < 0.55
        },
        |p, cx| ram_pow(p, cx, 1, Plus),
        |p, cx| ram_q_rhs(p, cx, 1, false),
    )
    .flag("the series argument is missing a factor 1/(bx)");
    v.push(rq);
    v.push(rq.corrected("eop-ramkernel-q-corrected", "argument q^{n+1} y/(bx)", rq.lhs, |p, cx| {
        ram_q_rhs(p, cx, 1, true)
    }));

    let rqc = IdentityCase::new(
        "eop-ramkernel-qc",
        Group::C,
        r#"Operator on the Ramanujan kernel: "$;q,(-1)^{c-1}q^{n+1}y$""#,
        |d| {
            ram_draw(d, 0.3);
            d.int("n", -3, 3);
            d.int("c", 2, 5);
        },
        ok,
        |p, cx| ram_pow(p, cx, p.i("c"), Plus),
        |p, cx| ram_q_rhs(p, cx, p.i("c"), false),
    )
    .flag("the series argument is missing a factor 1/(bx)");
    v.push(rqc);
    v.push(rqc.corrected(
        "eop-ramkernel-qc-corrected",
        "argument (-1)^{c-1} q^{n+1} y/(bx)",
        rqc.lhs,
        |p, cx| ram_q_rhs(p, cx, p.i("c"), true),
    ));

    let rt2 = IdentityCase::new(
        "eop-ramkernel-theta-q2",
        Group::C,
        r#"Operator on theta times the Ramanujan kernel: "$;q,y/dx$""#,
        |d| {
            let (_, x, y, _, b) = ram_draw(d, 0.5);
            let dd = d.x("d");
            fit_y(d, y, &[1.0 / (dd * x), 1.0 / (b * dd * x * x)], 0.5);
        },
        |p| {
            let [x, y, b, d] = p.cs(["x", "y", "b", "d"]);
            ok_lt(p, y / (d * x), 0.55) && (y / (b * d * x * x)).norm() < 0.55
        },
        |p, cx| ram_theta(p, cx, 2, Plus),
        |p, cx| ram_theta_q_rhs(p, cx, 2, false),
    )
    .flag("argument y/(dx) should be y/(bdx^2)");
    v.push(rt2);
    v.push(rt2.corrected(
        "eop-ramkernel-theta-q2-corrected",
        "argument y/(bdx^2)",
        rt2.lhs,
        |p, cx| ram_theta_q_rhs(p, cx, 2, true),
    ));

    let rtc = IdentityCase::new(
        "eop-ramkernel-theta-qc",
        Group::C,
        r#"Operator on theta times the Ramanujan kernel: "$;q,(-1)^{c-2}y/dx$""#,
        |d| {
            ram_draw(d, 0.5);
            d.x("d");
            d.int("c", 3, 6);
        },
        ok,
        |p, cx| ram_theta(p, cx, p.i("c"), Plus),
        |p, cx| ram_theta_q_rhs(p, cx, p.i("c"), false),
    )
    .flag("argument y/(dx) should be y/(bdx^2)");
    v.push(rtc);
    v.push(rtc.corrected(
        "eop-ramkernel-theta-qc-corrected",
        "argument (-1)^{c-2} y/(bdx^2)",
        rtc.lhs,
        |p, cx| ram_theta_q_rhs(p, cx, p.i("c"), true),
    ));

    let rqi = IdentityCase::new(
        "eop-ramkernel-qinv",
        Group::C,
        r#"Operator on the Ramanujan kernel: "$(-1)^{c+1}aq^{n}y/x$""#,
        |d| {
            ram_draw(d, 0.3);
            d.int("n", -3, 3);
            d.int("c", 0, 3);
        },
        ok,
        |p, cx| ram_pow(p, cx, p.i("c"), Minus),
        |p, cx| ram_qinv_rhs(p, cx, p.i("n")),
    )
    .flag("q^n in the argument should be q^{-n}");
    v.push(rqi);
    v.push(rqi.corrected(
        "eop-ramkernel-qinv-corrected",
        "argument (-1)^{c+1} a y/(q^n x)",
        rqi.lhs,
        |p, cx| ram_qinv_rhs(p, cx, -p.i("n")),
    ));

    v.push(IdentityCase::new(
        "eop-ramkernel-theta-qinv0",
        Group::C,
        r#"Operator on theta times the Ramanujan kernel: "$;q,ady$""#,
        |d| {
            let (_, _, y, a, _) = ram_draw(d, 0.3);
            let dd = d.modulus("d", 0.3, 1.1);
            fit_y(d, y, &[a * dd], 0.5);
        },
        |p| {
            let [y, a, d] = p.cs(["y", "a", "d"]);
            ok_lt(p, a * d * y, 0.55)
        },
        |p, cx| ram_theta(p, cx, 0, Minus),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let z0 = c64(0.0, 0.0);
            Ok(ram_theta_pre(p, cx)? * cx.phi(&[b / (a * x), z0], &[q / x], a * d * y)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-ramkernel-theta-qinvc",
        Group::C,
        r#"Operator on theta times the Ramanujan kernel: "$;q,(-1)^cady$""#,
        |d| {
            ram_draw(d, 0.3);
            d.modulus("d", 0.3, 1.1);
            d.int("c", 1, 4);
        },
        ok,
        |p, cx| ram_theta(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let c = p.i("c");
            let z = a * d * y * sgn(c);
            Ok(ram_theta_pre(p, cx)? * cx.phi(&[b / (a * x)], &pad(&[q / x], c - 1), z)?)
        },
    ));

    // f(t) = t^n prod (a_i t)_inf / prod (b_j t)_inf
    v.push(IdentityCase::new(
        "eop-bracket-q",
        Group::C,
        r#"Operator on a product quotient: "${}_{r+1}\phi_{r+c-1}$""#,
        |d| {
            let (q, x, y) = base_small_y(d, 0.3);
            let n = d.int("n", -3, 3);
            let r = d.int("r", 0, 2);
            let c = d.int("c", 1, 4);
            d.list("as", (r + c - 1) as usize);
            d.list("bs", (r + 1) as usize);
            if c == 1 {
                fit_y(d, y, &[q.powi(n as i32) / x], 0.5);
            }
        },
        |p| {
            let [x, y] = p.cs(["x", "y"]);
            ok(p) && (p.i("c") > 1 || (qn(p, p.i("n")) * y / x).norm() < 0.55)
        },
        |p, cx| bracket_pow(p, cx, p.i("c"), Plus),
        |p, cx| {
            let [x, y] = p.cs(["x", "y"]);
            let (n, c) = (p.i("n"), p.i("c"));
            let (al, bl) = lists(p);
            let z = qn(p, n) * y / x * sgn(c - 1);
            Ok(pw(x, n) * brk(cx, al, bl, x)? * cx.phi(&scale(bl, x), &scale(al, x), z)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-bracket-theta-q",
        Group::C,
        r#"Operator on theta times a product quotient: "$(-1)^{c-2}y/qdx^2$""#,
        |d| {
            let (q, x, y) = base_small_y(d, 0.5);
            let r = d.int("r", 0, 2);
            let c = d.int("c", 2, 5);
            d.list("as", (r + c - 2) as usize);
            d.list("bs", (r + 1) as usize);
            let dd = d.x("d");
            if c == 2 {
                fit_y(d, y, &[1.0 / (q * dd * x * x)], 0.5);
            }
        },
        |p| {
            let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
            ok(p) && (p.i("c") > 2 || (y / (q * d * x * x)).norm() < 0.55)
        },
        |p, cx| bracket_theta(p, cx, p.i("c"), Plus),
        |p, cx| {
            let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
            let c = p.i("c");
            let (al, bl) = lists(p);
            let z = y / (q * d * x * x) * sgn(c - 2);
            Ok(cx.theta(d * x)? * brk(cx, al, bl, x)? * cx.phi(&scale(bl, x), &scale(al, x), z)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-bracket-qinv",
        Group::C,
        r#"Operator on a product quotient: "$\frac{q^{s-r-n}ya_{1}\cdots a_{r}}{x^{1+s-r}b_{1}\cdots b_{s}}$""#,
        |d| {
            let (_, _, y) = base_small_y(d, 0.3);
            d.int("n", -3, 3);
            let s = d.int("s", 0, 2);
            let c = d.int("c", 0, 3);
            let r = d.int("r", 0, 2).min(s + c + 1);
            d.put_int("r", r);
            d.list("as", r as usize);
            d.list("bs", s as usize);
            if r == s + c + 1 {
                let unit = bracket_qinv_z(d.params()) / y;
                fit_y(d, y, &[unit], 0.5);
            }
        },
        |p| {
            let (al, bl) = lists(p);
            let (r, s, c) = (al.len() as i64, bl.len() as i64, p.i("c"));
            ok(p) && r <= s + c + 1 && (r < s + c + 1 || bracket_qinv_z(p).norm() < 0.55)
        },
        |p, cx| bracket_pow(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [q, x] = p.cs(["q", "x"]);
            let (n, c) = (p.i("n"), p.i("c"));
            let (al, bl) = lists(p);
            let up: Vec<_> = al.iter().map(|&a| q / (a * x)).collect();
            let down: Vec<_> = bl.iter().map(|&b| q / (b * x)).collect();
            let s = pw(x, n) * brk(cx, al, bl, x)?;
            Ok(s * cx.phi(&up, &pad(&down, c), bracket_qinv_z(p))?)
        },
    ));

    let btqi = IdentityCase::new(
        "eop-bracket-theta-qinv",
        Group::C,
        r#"Operator on theta times a product quotient: "${}_{r+1}\phi_{s+c}$""#,
        |d| {
            let (_, _, y) = base_small_y(d, 0.3);
            let s = d.int("s", 0, 2);
            let c = d.int("c", 0, 3);
            let r = d.int("r", 0, 2).min(s + c);
            d.put_int("r", r);
            d.list("as", r as usize);
            d.list("bs", s as usize);
            d.modulus("d", 0.3, 1.1);
            if r == s + c {
                let p = d.params();
                let units = [bracket_theta_qinv_z(p, false) / y, bracket_theta_qinv_z(p, true) / y];
                fit_y(d, y, &units, 0.5);
            }
        },
        |p| {
            let (al, bl) = lists(p);
            let (r, s, c) = (al.len() as i64, bl.len() as i64, p.i("c"));
            let small = bracket_theta_qinv_z(p, false).norm().max(bracket_theta_qinv_z(p, true).norm()) < 0.55;
            ok(p) && r <= s + c && (r < s + c || small)
        },
        |p, cx| bracket_theta(p, cx, p.i("c"), Minus),
        |p, cx| bracket_theta_qinv_rhs(p, cx, false),
    )
    .flag("the series argument is missing the factor d");
    v.push(btqi);
    v.push(btqi.corrected(
        "eop-bracket-theta-qinv-corrected",
        "argument multiplied by d",
        btqi.lhs,
        |p, cx| bracket_theta_qinv_rhs(p, cx, true),
    ));

    let t3 = IdentityCase::new(
        "eop-theta-q3-special",
        Group::C,
        r#"Operator on theta, b = 3: "$\vartheta(ax;q)(-y/qa^2;q)_{\infty}$""#,
        |d| {
            base(d, 0.5);
            d.x("a");
        },
        ok,
        |p, cx| theta_a(p, cx, 3, Plus),
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            Ok(cx.theta(a * x)? * cx.pinf(-y / (q * a * a))?)
        },
    )
    .flag("y/(qa^2) disagrees with the general form y/(qax^2)");
    v.push(t3);
    v.push(t3.corrected("eop-theta-q3-special-corrected", "argument -y/(qax^2)", t3.lhs, |p, cx| {
        let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
        Ok(cx.theta(a * x)? * cx.pinf(-y / (q * a * x * x))?)
    }));

    let t4 = IdentityCase::new(
        "eop-theta-q4-special",
        Group::C,
        r#"Operator on theta, b = 4: "$\vartheta(ax;q)\mathrm{K}_{\infty}(y/qa^2)$""#,
        |d| {
            base(d, 0.5);
            d.x("a");
        },
        ok,
        |p, cx| theta_a(p, cx, 4, Plus),
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            Ok(cx.theta(a * x)? * cx.e(2, y / (q * a * a))?)
        },
    )
    .flag("y/(qa^2) disagrees with the general form y/(qax^2)");
    v.push(t4);
    v.push(t4.corrected("eop-theta-q4-special-corrected", "argument y/(qax^2)", t4.lhs, |p, cx| {
        let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
        Ok(cx.theta(a * x)? * cx.e(2, y / (q * a * x * x))?)
    }));

    v
}

fn prodinf_qinv_rhs(p: &Params, cx: &EvalCtx, m: ComplexScalar) -> QResult<Scaled> {
    let [x, y, a] = p.cs(["x", "y", "a"]);
    let (n, b) = (p.i("n"), p.i("b"));
    let z = y / (qn(p, n) * x) * m * sgn(b + 1);
    Ok(pw(x, n) * cx.pinf(a / x)? * cx.phi(&zeros(1), &pad(&[a / x], b), z)?)
}

fn prodinf_theta_qb_rhs(p: &Params, cx: &EvalCtx, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
    let b = p.i("b");
    let mut z = a * y / (c * x * x * x) * sgn(b - 2);
    if fixed {
        z /= q * q;
    }
    Ok(prodinf_theta_pre(p, cx)? * cx.phi(&[q * x / a], &zeros(b - 3), z)?)
}

fn ram_q_rhs(p: &Params, cx: &EvalCtx, c: i64, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
    let n = p.i("n");
    let mut z = qn(p, n + 1) * y;
    if fixed {
        z /= b * x;
    }
    let lower = q * a * x / b;
    let series = if c == 1 {
        cx.phi(&[x, c64(0.0, 0.0)], &[lower], z)?
    } else {
        cx.phi(&[x], &pad(&[lower], c - 2), z * sgn(c - 1))?
    };
    Ok(ram_pow_pre(p, cx)? * series)
}

fn ram_theta_q_rhs(p: &Params, cx: &EvalCtx, c: i64, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
    let z = if fixed { y / (b * d * x * x) } else { y / (d * x) };
    let lower = q * a * x / b;
    let series = if c == 2 {
        cx.phi(&[x, c64(0.0, 0.0)], &[lower], z)?
    } else {
        cx.phi(&[x], &pad(&[lower], c - 3), z * sgn(c - 2))?
    };
    Ok(ram_theta_pre(p, cx)? * series)
}

fn ram_qinv_rhs(p: &Params, cx: &EvalCtx, e: i64) -> QResult<Scaled> {
    let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
    let c = p.i("c");
    let z = a * y / x * qn(p, e) * sgn(c + 1);
    Ok(ram_pow_pre(p, cx)? * cx.phi(&[b / (a * x)], &pad(&[q / x], c), z)?)
}

fn bracket_theta_qinv_rhs(p: &Params, cx: &EvalCtx, with_d: bool) -> QResult<Scaled> {
    let [q, x, d] = p.cs(["q", "x", "d"]);
    let c = p.i("c");
    let (al, bl) = lists(p);
    let up: Vec<_> = al.iter().map(|&a| q / (a * x)).collect();
    let down: Vec<_> = bl.iter().map(|&b| q / (b * x)).collect();
    let s = cx.theta(d * x)? * brk(cx, al, bl, x)?;
    Ok(s * cx.phi(&pad(&up, 1), &pad(&down, c), bracket_theta_qinv_z(p, with_d))?)
}

/// The corollaries: `a` (and `b`) are free, `c` is the operator exponent.
fn corollaries() -> Vec<IdentityCase> {
    let mut v = Vec::new();

    v.push(IdentityCase::new(
        "eop-ax-q1",
        Group::C,
        r#"Corollary: "$\mathrm{E}_{q}(y\mathbf{D}_{q}|q)\{x^n(ax;q)_{\infty}\}$""#,
        |d| {
            let (q, x, y) = base(d, 0.3);
            d.c("a");
            let n = d.int("n", -3, 3);
            fit_y(d, y, &[q.powi(n as i32) / x], 0.5);
        },
        |p| {
            let [x, y] = p.cs(["x", "y"]);
            ok_lt(p, qn(p, p.i("n")) * y / x, 0.55)
        },
        |p, cx| ax(p, cx, 1, Plus),
        |p, cx| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            let n = p.i("n");
            let z0 = c64(0.0, 0.0);
            Ok(pw(x, n) * cx.pinf(a * x)? * cx.phi(&[z0, z0], &[a * x], qn(p, n) * y / x)?)
        },
    ));

    let rq1 = IdentityCase::new(
        "eop-recip-ax-q1",
        Group::C,
        r#"Corollary: "$x^n\frac{(y/x;q)_{n}}{(ay/x;q)_{n}}\frac{(ay/x;q)_{\infty}}{(ax,y/x;q)_{\infty}}$""#,
        |d| {
            let (q, x, y) = base(d, 0.3);
            d.c("a");
            let n = d.int("n", -3, 3);
            fit_y(d, y, &[q.powi(n as i32) / x], 0.5);
        },
        |p| {
            let [x, y] = p.cs(["x", "y"]);
            ok_lt(p, qn(p, p.i("n")) * y / x, 0.55)
        },
        |p, cx| recip(p, cx, 1, Plus),
        |p, cx| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            let n = p.i("n");
            let v = pw(x, n) * cx.poch(y / x, n)? / cx.poch(a * y / x, n)?;
            Ok(v * cx.pinf(a * y / x)? * cx.rinf(a * x)? * cx.rinf(y / x)?)
        },
    )
    .flag("does not match the operator sum; the sum is (q^n a y)_inf/((ax)_inf (q^n y/x)_inf)");
    v.push(rq1);
    v.push(rq1.corrected(
        "eop-recip-ax-q1-corrected",
        "x^n (q^n a y;q)_inf/((ax;q)_inf (q^n y/x;q)_inf)",
        rq1.lhs,
        |p, cx| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            let n = p.i("n");
            let qn = qn(p, n);
            Ok(pw(x, n) * cx.pinf(qn * a * y)? * cx.rinf(a * x)? * cx.rinf(qn * y / x)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-recip-ax-qc",
        Group::C,
        r#"Corollary: "$\mathrm{E}_{q}(y\mathbf{D}_{q}|q^c)\left\{\frac{x^n}{(ax;q)_{\infty}}\right\}$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.int("n", -3, 3);
            d.int("c", 2, 5);
        },
        ok,
        |p, cx| recip(p, cx, p.i("c"), Plus),
        |p, cx| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            let (n, c) = (p.i("n"), p.i("c"));
            let z = qn(p, n) * y / x * sgn(c - 1);
            Ok(pw(x, n) * cx.rinf(a * x)? * cx.phi(&[a * x], &zeros(c - 1), z)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-ratio-qc",
        Group::C,
        r#"Corollary: "$\mathrm{E}_{q}(y\mathbf{D}_{q}|q^c)\left\{x^n\frac{(ax;q)_{\infty}}{(bx;q)_{\infty}}\right\}$""#,
        |d| {
            let (q, x, y) = base(d, 0.3);
            d.c("a");
            d.c("b");
            let n = d.int("n", -3, 3);
            if d.int("c", 1, 4) == 1 {
                fit_y(d, y, &[q.powi(n as i32) / x], 0.5);
            }
        },
        |p| {
            let [x, y] = p.cs(["x", "y"]);
            ok(p) && (p.i("c") > 1 || (qn(p, p.i("n")) * y / x).norm() < 0.55)
        },
        |p, cx| ratio(p, cx, p.i("c"), Plus),
        |p, cx| {
            let [x, y, a, b] = p.cs(["x", "y", "a", "b"]);
            let (n, c) = (p.i("n"), p.i("c"));
            let z = qn(p, n) * y / x * sgn(c - 1);
            Ok(ratio_pre(p, cx)? * cx.phi(&[b * x, c64(0.0, 0.0)], &pad(&[a * x], c - 1), z)?)
        },
    ));

    let tax2 = IdentityCase::new(
        "eop-theta-ax-q2",
        Group::C,
        r#"Corollary: "$;q,y/bdx^2$""#,
        |d| {
            let (q, x, y) = base(d, 0.5);
            d.c("a");
            let b = d.x("b");
            let dd = d.x("d");
            fit_y(d, y, &[1.0 / (q * b * x * x), 1.0 / (b * dd * x * x)], 0.5);
        },
        |p| {
            let [q, x, y, b, d] = p.cs(["q", "x", "y", "b", "d"]);
            ok_lt(p, y / (q * b * x * x), 0.55) && (y / (b * d * x * x)).norm() < 0.55
        },
        |p, cx| theta_b_ax(p, cx, 2, Plus),
        |p, cx| theta_ax_q2_rhs(p, cx, false),
    )
    .flag("argument y/(bdx^2) names a parameter d that does not occur; the sum gives y/(qbx^2)");
    v.push(tax2);
    v.push(tax2.corrected("eop-theta-ax-q2-corrected", "argument y/(qbx^2)", tax2.lhs, |p, cx| {
        theta_ax_q2_rhs(p, cx, true)
    }));

    v.push(IdentityCase::new(
        "eop-theta-recip-q2",
        Group::C,
        r#"Corollary: "$\frac{(ay/qbx;q)_{\infty}}{(ax,y/qbx^2;q)_{\infty}}$""#,
        |d| {
            let (q, x, y) = base(d, 0.5);
            d.c("a");
            let b = d.x("b");
            fit_y(d, y, &[1.0 / (q * b * x * x)], 0.5);
        },
        |p| {
            let [q, x, y, b] = p.cs(["q", "x", "y", "b"]);
            ok_lt(p, y / (q * b * x * x), 0.55)
        },
        |p, cx| theta_b_recip(p, cx, 2, Plus),
        |p, cx| {
            let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
            let v = cx.theta(b * x)? * cx.pinf(a * y / (q * b * x))?;
            Ok(v * cx.rinf(a * x)? * cx.rinf(y / (q * b * x * x))?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-recip-qc",
        Group::C,
        r#"Corollary: "$;q,(-1)^{c-2}y/qbx^2$""#,
        |d| {
            base(d, 0.5);
            d.c("a");
            d.x("b");
            d.int("c", 3, 6);
        },
        ok,
        |p, cx| theta_b_recip(p, cx, p.i("c"), Plus),
        |p, cx| {
            let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
            let c = p.i("c");
            let z = y / (q * b * x * x) * sgn(c - 2);
            Ok(cx.theta(b * x)? * cx.rinf(a * x)? * cx.phi(&[a * x], &zeros(c - 2), z)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-ratio-qc",
        Group::C,
        r#"Corollary: "$\mathrm{E}_{q}(y\mathbf{D}_{q}|q^c)\left\{\vartheta(dx;q)\frac{(ax;q)_{\infty}}{(bx;q)_{\infty}}\right\}$""#,
        |d| {
            let (q, x, y) = base(d, 0.5);
            d.c("a");
            d.c("b");
            let dd = d.x("d");
            if d.int("c", 2, 5) == 2 {
                fit_y(d, y, &[1.0 / (q * dd * x * x)], 0.5);
            }
        },
        |p| {
            let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
            ok(p) && (p.i("c") > 2 || (y / (q * d * x * x)).norm() < 0.55)
        },
        |p, cx| theta_ratio(p, cx, p.i("c"), Plus),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let c = p.i("c");
            let z = y / (q * d * x * x) * sgn(c - 2);
            Ok(theta_ratio_pre(p, cx)? * cx.phi(&[b * x, c64(0.0, 0.0)], &pad(&[a * x], c - 2), z)?)
        },
    ));

    let axq1 = IdentityCase::new(
        "eop-ax-qinv1",
        Group::C,
        r#"Corollary: "$(qx/a)^n\frac{(-qx/y;q)_{n}}{(-q^2/ay;q)_{n}}$""#,
        |d| {
            let (q, _, y) = base(d, 0.3);
            let a = d.c("a");
            let n = d.int("n", -3, 3);
            fit_y(d, y, &[a / q.powi(n as i32 + 1)], 0.5);
        },
        |p| {
            let [y, a] = p.cs(["y", "a"]);
            ok_lt(p, a * y / qn(p, p.i("n") + 1), 0.55)
        },
        |p, cx| ax(p, cx, 0, Minus),
        |p, cx| ax_qinv1_rhs(p, cx, p.c("x")),
    )
    .flag("prefactor (qx/a)^n should be (q/a)^n");
    v.push(axq1);
    v.push(axq1.corrected("eop-ax-qinv1-corrected", "prefactor (q/a)^n", axq1.lhs, |p, cx| {
        ax_qinv1_rhs(p, cx, c64(1.0, 0.0))
    }));

    v.push(IdentityCase::new(
        "eop-ax-qinvc",
        Group::C,
        r#"Corollary: "$;q,(-1)^{c+1}ay/q^{n+1}$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.int("n", -3, 3);
            d.int("c", 1, 4);
        },
        ok,
        |p, cx| ax(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            let (n, c) = (p.i("n"), p.i("c"));
            let z = a * y / qn(p, n + 1) * sgn(c + 1);
            Ok(pw(x, n) * cx.pinf(a * x)? * cx.phi(&[q / (a * x)], &zeros(c), z)?)
        },
    ));

    let raqc = IdentityCase::new(
        "eop-recip-ax-qinvc",
        Group::C,
        r#"Corollary: "$;q,(-1)^{c+1}y/aq^{n}x^2$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.int("n", -3, 3);
            d.int("c", 0, 3);
        },
        ok,
        |p, cx| recip(p, cx, p.i("c"), Minus),
        |p, cx| recip_ax_qinvc_rhs(p, cx, false),
    )
    .flag("the series argument is missing a factor q");
    v.push(raqc);
    v.push(raqc.corrected(
        "eop-recip-ax-qinvc-corrected",
        "argument (-1)^{c+1} y/(a q^{n-1} x^2)",
        raqc.lhs,
        |p, cx| recip_ax_qinvc_rhs(p, cx, true),
    ));

    let rqic = IdentityCase::new(
        "eop-ratio-qinvc",
        Group::C,
        r#"Corollary: "$;q,(-1)^{c}axy/bq^{n}$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.c("b");
            d.int("n", -3, 3);
            d.int("c", 0, 3);
        },
        ok,
        |p, cx| ratio(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [x, y, a, b] = p.cs(["x", "y", "a", "b"]);
            let (n, c) = (p.i("n"), p.i("c"));
            ratio_qinvc_rhs(p, cx, a * x * y / (b * qn(p, n)) * sgn(c))
        },
    )
    .flag("argument should be (-1)^{c+1} a y/(b q^n x)");
    v.push(rqic);
    v.push(rqic.corrected(
        "eop-ratio-qinvc-corrected",
        "argument (-1)^{c+1} a y/(b q^n x)",
        rqic.lhs,
        |p, cx| {
            let [x, y, a, b] = p.cs(["x", "y", "a", "b"]);
            let (n, c) = (p.i("n"), p.i("c"));
            ratio_qinvc_rhs(p, cx, a * y / (b * qn(p, n) * x) * sgn(c + 1))
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-ax-qinvc",
        Group::C,
        r#"Corollary: "$(-1)^cabxy/q$""#,
        |d| {
            let (q, x, y) = base(d, 0.3);
            let a = d.c("a");
            let b = d.modulus("b", 0.3, 1.1);
            if d.int("c", 1, 4) == 1 {
                fit_y(d, y, &[a * b * x / q], 0.5);
            }
        },
        |p| {
            let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
            ok(p) && (p.i("c") > 1 || (a * b * x * y / q).norm() < 0.55)
        },
        |p, cx| theta_b_ax(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
            let c = p.i("c");
            let z = a * b * x * y / q * sgn(c);
            let s = cx.theta(b * x)? * cx.pinf(a * x)?;
            Ok(s * cx.phi(&[q / (a * x), c64(0.0, 0.0)], &zeros(c), z)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-recip-qinvc",
        Group::C,
        r#"Corollary: "$(-1)^cbqy/ax$""#,
        |d| {
            base(d, 0.3);
            d.c("a");
            d.modulus("b", 0.3, 1.1);
            d.int("c", 0, 3);
        },
        ok,
        |p, cx| theta_b_recip(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
            let c = p.i("c");
            let z = b * q * y / (a * x) * sgn(c);
            Ok(cx.theta(b * x)? * cx.rinf(a * x)? * cx.phi(&zeros(1), &pad(&[q / (a * x)], c), z)?)
        },
    ));

    v.push(IdentityCase::new(
        "eop-theta-ratio-qinvc",
        Group::C,
        r#"Corollary: "$(-1)^cady/b$""#,
        |d| {
            let (_, _, y) = base(d, 0.3);
            let a = d.c("a");
            let b = d.c("b");
            let dd = d.modulus("d", 0.3, 1.1);
            if d.int("c", 0, 3) == 0 {
                fit_y(d, y, &[a * dd / b], 0.5);
            }
        },
        |p| {
            let [y, a, b, d] = p.cs(["y", "a", "b", "d"]);
            ok(p) && (p.i("c") > 0 || (a * d * y / b).norm() < 0.55)
        },
        |p, cx| theta_ratio(p, cx, p.i("c"), Minus),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let c = p.i("c");
            let z = a * d * y / b * sgn(c);
            let up = [q / (a * x), c64(0.0, 0.0)];
            Ok(theta_ratio_pre(p, cx)? * cx.phi(&up, &pad(&[q / (b * x)], c), z)?)
        },
    ));

    v
}

fn theta_ax_q2_rhs(p: &Params, cx: &EvalCtx, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
    let z = if fixed { y / (q * b * x * x) } else { y / (b * d * x * x) };
    let z0 = c64(0.0, 0.0);
    Ok(cx.theta(b * x)? * cx.pinf(a * x)? * cx.phi(&[z0, z0], &[a * x], z)?)
}

fn ax_qinv1_rhs(p: &Params, cx: &EvalCtx, xm: ComplexScalar) -> QResult<Scaled> {
    let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
    let n = p.i("n");
    let v = pw(q * xm / a, n) * cx.poch(-q * x / y, n)? / cx.poch(-q * q / (a * y), n)?;
    Ok(v * cx.pinf(a * x)? * cx.pinf(-y / x)? * cx.rinf(-a * y / q)?)
}

fn recip_ax_qinvc_rhs(p: &Params, cx: &EvalCtx, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
    let (n, c) = (p.i("n"), p.i("c"));
    let mut z = y / (a * qn(p, n) * x * x) * sgn(c + 1);
    if fixed {
        z *= q;
    }
    Ok(pw(x, n) * cx.rinf(a * x)? * cx.phi(&[], &pad(&[q / (a * x)], c), z)?)
}

fn ratio_qinvc_rhs(p: &Params, cx: &EvalCtx, z: ComplexScalar) -> QResult<Scaled> {
    let [q, x, a, b] = p.cs(["q", "x", "a", "b"]);
    let c = p.i("c");
    Ok(ratio_pre(p, cx)? * cx.phi(&[q / (a * x)], &pad(&[q / (b * x)], c), z)?)
}

pub(super) fn cases() -> Vec<IdentityCase> {
    let mut v = theorems();
    v.extend(corollaries());
    v
}
