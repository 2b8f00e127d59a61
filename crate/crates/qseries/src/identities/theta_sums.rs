//! Group D: bilateral sums `sum_n q^{n(n+1)/2} (mx)^n g_n(x)` that collapse to a theta
//! function times a single series. Every left side is summed over both tails.

use super::ctx::{pad, prod, q_ok, scale, sgn, zeros};
use super::params::{Draw, Params};
use super::{EvalCtx, Group, IdentityCase};
use crate::error::QResult;
use crate::scalar::{c64, ComplexScalar, Scaled};

const LIM: f64 = 0.7;

/// `sum_n q^{n(n+1)/2} m^n term(n)`.
fn tsum<F>(cx: &EvalCtx, m: ComplexScalar, term: F) -> QResult<Scaled>
where
    F: Fn(i64) -> QResult<Scaled>,
{
    cx.bil("theta-weighted bilateral sum", |n| {
        Ok(cx.qpow(n * (n + 1) / 2) * Scaled::from(m).powi(n) * term(n)?)
    })
}

fn qn(q: ComplexScalar, n: i64) -> ComplexScalar {
    q.powi(n as i32)
}

fn fit_y(d: &mut Draw, y: ComplexScalar, ratio: ComplexScalar) -> ComplexScalar {
    let y = Draw::shrink(y, ratio, LIM);
    d.put("y", y)
}

fn ok(p: &Params) -> bool {
    let [q, x, y] = p.cs(["q", "x", "y"]);
    q_ok(q) && x.norm() > 0.0 && y.norm() > 0.0
}

fn ok_lt(p: &Params, z: ComplexScalar) -> bool {
    ok(p) && z.norm() < LIM + 0.05
}

fn base(d: &mut Draw) -> (ComplexScalar, ComplexScalar, ComplexScalar) {
    let q = d.q();
    let x = d.modulus("x", 0.5, 1.5);
    let y = d.c("y");
    (q, x, y)
}

/// Ramanujan-kernel cases use a smaller `y` and draw `a`, `b` and `d` in this order.
fn ram_base(d: &mut Draw, d_hi: f64) -> (ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar, ComplexScalar) {
    let q = d.q();
    let x = d.modulus("x", 0.5, 1.5);
    let y = d.modulus("y", 0.05, 0.5);
    let a = d.modulus("a", 0.3, 0.9);
    let b = d.c("b");
    let dd = d.modulus("d", 0.3, d_hi);
    (q, x, y, a, b, dd)
}

fn theta_eplus_rhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
    Ok(cx.theta(a * x)? * cx.e((p.i("b") - 2) as u32, y / (q * a * x * x))?)
}

fn theta_eminus_lhs(p: &Params, cx: &EvalCtx, b: i64) -> QResult<Scaled> {
    let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
    tsum(cx, a * x, |n| cx.e((b + 1) as u32, y / (qn(q, n) * x)))
}

fn theta_eminus_rhs(p: &Params, cx: &EvalCtx, b: i64) -> QResult<Scaled> {
    let [x, y, a] = p.cs(["x", "y", "a"]);
    Ok(cx.theta(a * x)? * cx.e(b as u32, a * y)?)
}

fn phib_rhs(p: &Params, cx: &EvalCtx, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
    let b = p.i("b");
    let mut z = a * y / (c * x * x * x) * sgn(b - 2);
    if fixed {
        z /= q * q;
    }
    Ok(cx.theta(c * x)? * cx.phi(&[q * x / a], &zeros(b - 3), z)?)
}

fn phib1_qinv_lhs(p: &Params, cx: &EvalCtx, m: ComplexScalar) -> QResult<Scaled> {
    let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
    let b = p.i("b");
    let lower = pad(&[a / x], b);
    tsum(cx, c * x, |n| cx.phi(&zeros(1), &lower, m * y / (qn(q, n) * x) * sgn(b + 1)))
}

fn ramkernel_c_lhs(p: &Params, cx: &EvalCtx, m: ComplexScalar) -> QResult<Scaled> {
    let [q, x, y, a, b] = p.cs(["q", "x", "y", "a", "b"]);
    let c = p.i("c");
    let lower = pad(&[q * a * x / b], c - 2);
    tsum(cx, m * x, |n| cx.phi(&[x], &lower, qn(q, n + 1) * y * sgn(c - 1)))
}

fn ramkernel_qinv_lhs(p: &Params, cx: &EvalCtx, c: i64, e: i64) -> QResult<Scaled> {
    let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
    let lower = pad(&[q / x], c);
    tsum(cx, d * x, |n| cx.phi(&[b / (a * x)], &lower, a * y / x * qn(q, e * n) * sgn(c + 1)))
}

fn bracket_lhs(p: &Params, cx: &EvalCtx) -> QResult<Scaled> {
    let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
    let c = p.i("c");
    let (al, bl) = (p.list("as"), p.list("bs"));
    let (up, lo) = (scale(bl, x), scale(al, x));
    tsum(cx, d * x, |n| cx.phi(&up, &lo, qn(q, n) * y / x * sgn(c - 1)))
}

fn bracket_rhs(p: &Params, cx: &EvalCtx, fixed: bool) -> QResult<Scaled> {
    let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
    let c = p.i("c");
    let (al, bl) = (p.list("as"), p.list("bs"));
    let z = y / (q * d * x * x) * sgn(c - 2);
    let series = if fixed {
        cx.phi(&pad(&scale(bl, x), 1), &scale(al, x), z)?
    } else {
        cx.phi(&scale(bl, x), &scale(&al[..al.len() - 1], x), z)?
    };
    Ok(cx.theta(d * x)? * series)
}

/// `q^{s-r} A / (x^{s-r} B)` for the list parameters.
fn bracket_unit(p: &Params) -> ComplexScalar {
    let [q, x] = p.cs(["q", "x"]);
    let (al, bl) = (p.list("as"), p.list("bs"));
    let e = bl.len() as i32 - al.len() as i32;
    q.powi(e) * prod(al) / (x.powi(e) * prod(bl))
}

fn bracket_qinv_z(p: &Params, with_d: bool) -> ComplexScalar {
    let z = bracket_unit(p) * p.c("y") * sgn(p.i("c"));
    if with_d {
        z * p.c("d")
    } else {
        z
    }
}

fn bracket_qinv_lists(p: &Params) -> (Vec<ComplexScalar>, Vec<ComplexScalar>) {
    let [q, x] = p.cs(["q", "x"]);
    let up = p.list("as").iter().map(|&a| q / (a * x)).collect();
    let lo = p.list("bs").iter().map(|&b| q / (b * x)).collect();
    (up, lo)
}

fn bracket_qinv_rhs(p: &Params, cx: &EvalCtx, with_d: bool) -> QResult<Scaled> {
    let [x, d] = p.cs(["x", "d"]);
    let (up, lo) = bracket_qinv_lists(p);
    let series = cx.phi(&pad(&up, 1), &pad(&lo, p.i("c")), bracket_qinv_z(p, with_d))?;
    Ok(cx.theta(d * x)? * series)
}

pub(super) fn cases() -> Vec<IdentityCase> {
    let mut v = Vec::new();

    v.push(IdentityCase::new(
        "bs-theta-eplus",
        Group::D,
        r#"Theta sum over E_{b-1}: "$(ax)^n\mathrm{E}_{b-1}(q^ny/x;q)$""#,
        |d| {
            let (q, x, y) = base(d);
            let a = d.x("a");
            if d.int("b", 2, 5) == 2 {
                fit_y(d, y, 1.0 / (q * a * x * x));
            }
        },
        |p| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            ok(p) && (p.i("b") > 2 || ok_lt(p, y / (q * a * x * x)))
        },
        |p, cx| {
            let [q, x, y, a] = p.cs(["q", "x", "y", "a"]);
            let b = p.i("b");
            tsum(cx, a * x, |n| cx.e((b - 1) as u32, qn(q, n) * y / x))
        },
        theta_eplus_rhs,
    ));

    v.push(IdentityCase::new(
        "bs-theta-eminus",
        Group::D,
        r#"Theta sum over E_{b+1}: "$\mathrm{E}_{b+1}(q^{-n}y/x;q)$""#,
        |d| {
            let (_, _, y) = base(d);
            let a = d.modulus("a", 0.3, 1.1);
            if d.int("b", 0, 3) == 0 {
                fit_y(d, y, a);
            }
        },
        |p| {
            let [y, a] = p.cs(["y", "a"]);
            ok(p) && (p.i("b") > 0 || ok_lt(p, a * y))
        },
        |p, cx| theta_eminus_lhs(p, cx, p.i("b")),
        |p, cx| theta_eminus_rhs(p, cx, p.i("b")),
    ));

    v.push(IdentityCase::new(
        "bs-theta-kinf",
        Group::D,
        r#"Theta sum over K_inf: "$\mathrm{K}_{\infty}(q^{-n}y/x)$""#,
        |d| {
            base(d);
            d.modulus("a", 0.3, 1.1);
        },
        ok,
        |p, cx| theta_eminus_lhs(p, cx, 1),
        |p, cx| {
            let [x, y, a] = p.cs(["x", "y", "a"]);
            Ok(cx.theta(a * x)? * cx.pinf(-a * y)?)
        },
    ));

    v.push(IdentityCase::new(
        "bs-1phi1-theta",
        Group::D,
        r#"Theta sum over 1phi1: "$\frac{(-y/qcx^2;q)_{\infty}}{(-ay/q^2cx^3;q)_{\infty}}$""#,
        |d| {
            let (q, x, y) = base(d);
            let a = d.c("a");
            let c = d.x("c");
            fit_y(d, y, a / (q * q * c * x * x * x));
        },
        |p| {
            let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
            ok_lt(p, a * y / (q * q * c * x * x * x))
        },
        |p, cx| {
            let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
            let z0 = c64(0.0, 0.0);
            tsum(cx, c * x, |n| cx.phi(&[q * x / a], &[z0], qn(q, n - 1) * a * y / (x * x)))
        },
        |p, cx| {
            let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
            let v = cx.theta(c * x)? * cx.pinf(-y / (q * c * x * x))?;
            Ok(v * cx.rinf(-a * y / (q * q * c * x * x * x))?)
        },
    ));

    let phib = IdentityCase::new(
        "bs-1phib-theta",
        Group::D,
        r#"Theta sum over 1phi_{b-2}: "For $b\geq4$""#,
        |d| {
            base(d);
            d.c("a");
            d.x("c");
            d.int("b", 4, 6);
        },
        ok,
        |p, cx| {
            let [q, x, y, a, c] = p.cs(["q", "x", "y", "a", "c"]);
            let b = p.i("b");
            let lower = zeros(b - 2);
            tsum(cx, c * x, |n| cx.phi(&[q * x / a], &lower, qn(q, n - 1) * a * y / (x * x) * sgn(b - 1)))
        },
        |p, cx| phib_rhs(p, cx, false),
    )
    .flag("the right argument is missing a factor 1/q^2");
    v.push(phib);
    v.push(phib.corrected(
        "bs-1phib-theta-corrected",
        "right argument (-1)^{b-2} a y/(q^2 c x^3)",
        phib.lhs,
        |p, cx| phib_rhs(p, cx, true),
    ));

    let phib1 = IdentityCase::new(
        "bs-1phib1-qinv-theta",
        Group::D,
        r#"Theta sum over 1phi_{b+1}: "For $b\geq1$""#,
        |d| {
            base(d);
            d.c("a");
            d.modulus("c", 0.3, 1.1);
            d.int("b", 1, 4);
        },
        ok,
        |p, cx| phib1_qinv_lhs(p, cx, p.c("a")),
        |p, cx| {
            let [x, y, a, c] = p.cs(["x", "y", "a", "c"]);
            let b = p.i("b");
            Ok(cx.theta(c * x)? * cx.phi(&zeros(1), &pad(&[a / x], b - 1), c * y * sgn(b))?)
        },
    )
    .flag("the left argument carries a spurious factor a");
    v.push(phib1);
    v.push(phib1.corrected(
        "bs-1phib1-qinv-theta-corrected",
        "left argument (-1)^{b+1} y/(q^n x)",
        |p, cx| phib1_qinv_lhs(p, cx, c64(1.0, 0.0)),
        phib1.rhs,
    ));

    v.push(IdentityCase::new(
        "bs-ramkernel-1phi1",
        Group::D,
        r#"Theta sum over the kernel series: "$;q,-q^{n+1}y$""#,
        |d| {
            let (_, x, y, _, _, dd) = ram_base(d, 1.5);
            fit_y(d, y, 1.0 / (dd * x));
        },
        |p| {
            let [x, y, d] = p.cs(["x", "y", "d"]);
            ok_lt(p, y / (d * x))
        },
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            tsum(cx, d * x, |n| cx.phi(&[x], &[q * a * x / b], -qn(q, n + 1) * y))
        },
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            Ok(cx.theta(d * x)? * cx.phi(&[x, c64(0.0, 0.0)], &[q * a * x / b], y / (d * x))?)
        },
    ));

    let rkc = IdentityCase::new(
        "bs-ramkernel-c",
        Group::D,
        r#"Theta sum over the kernel series: "For $c\geq3$""#,
        |d| {
            ram_base(d, 1.5);
            d.int("c", 3, 5);
        },
        ok,
        |p, cx| ramkernel_c_lhs(p, cx, c64(p.i("c") as f64, 0.0)),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let c = p.i("c");
            let lower = pad(&[q * a * x / b], c - 3);
            Ok(cx.theta(d * x)? * cx.phi(&[x], &lower, y / (d * x) * sgn(c - 2))?)
        },
    )
    .flag("the left side sums (cx)^n but the right side needs (dx)^n");
    v.push(rkc);
    v.push(rkc.corrected(
        "bs-ramkernel-c-corrected",
        "left side summed with (dx)^n",
        |p, cx| ramkernel_c_lhs(p, cx, p.c("d")),
        rkc.rhs,
    ));

    let rki1 = IdentityCase::new(
        "bs-ramkernel-qinv-1",
        Group::D,
        r#"Theta sum over the kernel series: "$;q,-aq^{n}y/x$""#,
        |d| {
            let (_, _, y, a, _, dd) = ram_base(d, 1.1);
            fit_y(d, y, a * dd);
        },
        |p| {
            let [y, a, d] = p.cs(["y", "a", "d"]);
            ok_lt(p, a * d * y)
        },
        |p, cx| ramkernel_qinv_lhs(p, cx, 0, 1),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let z0 = c64(0.0, 0.0);
            Ok(cx.theta(d * x)? * cx.phi(&[b / (a * x), z0], &[q / x], a * d * y)?)
        },
    )
    .flag("q^n in the left argument should be q^{-n}");
    v.push(rki1);
    v.push(rki1.corrected(
        "bs-ramkernel-qinv-1-corrected",
        "left argument -a y/(q^n x)",
        |p, cx| ramkernel_qinv_lhs(p, cx, 0, -1),
        rki1.rhs,
    ));

    let rkic = IdentityCase::new(
        "bs-ramkernel-qinv-c",
        Group::D,
        r#"Theta sum over the kernel series: "For $c\geq1$""#,
        |d| {
            ram_base(d, 1.1);
            d.int("c", 1, 3);
        },
        ok,
        |p, cx| ramkernel_qinv_lhs(p, cx, p.i("c"), 1),
        |p, cx| {
            let [q, x, y, a, b, d] = p.cs(["q", "x", "y", "a", "b", "d"]);
            let c = p.i("c");
            let lower = pad(&[q / x], c - 1);
            Ok(cx.theta(d * x)? * cx.phi(&[b / (a * x)], &lower, a * d * y * sgn(c))?)
        },
    )
    .flag("q^n in the left argument should be q^{-n}");
    v.push(rkic);
    v.push(rkic.corrected(
        "bs-ramkernel-qinv-c-corrected",
        "left argument (-1)^{c+1} a y/(q^n x)",
        |p, cx| ramkernel_qinv_lhs(p, cx, p.i("c"), -1),
        rkic.rhs,
    ));

    let br = IdentityCase::new(
        "bs-bracket",
        Group::D,
        r#"Theta sum over a product quotient: "For $c\geq2$""#,
        |d| {
            let q = d.q();
            let x = d.modulus("x", 0.5, 1.5);
            let y = d.modulus("y", 0.05, 0.5);
            let r = d.int("r", 0, 2);
            let c = d.int("c", 2, 4);
            d.list("as", (r + c - 1) as usize);
            d.list("bs", (r + 1) as usize);
            let dd = d.x("d");
            if c == 2 {
                fit_y(d, y, 1.0 / (q * dd * x * x));
            }
        },
        |p| {
            let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
            ok(p) && (p.i("c") > 2 || ok_lt(p, y / (q * d * x * x)))
        },
        bracket_lhs,
        |p, cx| bracket_rhs(p, cx, false),
    )
    .flag("the right side drops a_{r+c-1} x; it should be r+2 phi r+c-1 with an extra upper 0");
    v.push(br);
    v.push(br.corrected(
        "bs-bracket-corrected",
        "right side r+2 phi r+c-1 with upper b_j x and 0, lower a_i x",
        br.lhs,
        |p, cx| bracket_rhs(p, cx, true),
    ));

    let bq = IdentityCase::new(
        "bs-bracket-qinv",
        Group::D,
        r#"Theta sum over a product quotient: "For $c\in\mathbb{N}$""#,
        |d| {
            d.q();
            d.modulus("x", 0.5, 1.5);
            let y = d.modulus("y", 0.05, 0.5);
            let s = d.int("s", 0, 2);
            let c = d.int("c", 0, 3);
            let r = d.int("r", 0, 2).min(s + c);
            d.put_int("r", r);
            d.list("as", r as usize);
            d.list("bs", s as usize);
            let dd = d.modulus("d", 0.3, 1.1);
            if r == s + c {
                let unit = bracket_unit(d.params());
                let worst = if dd.norm() > 1.0 { unit * dd } else { unit };
                fit_y(d, y, worst);
            }
        },
        |p| {
            let (r, s, c) = (p.list("as").len() as i64, p.list("bs").len() as i64, p.i("c"));
            let small = bracket_qinv_z(p, false).norm().max(bracket_qinv_z(p, true).norm()) < LIM + 0.05;
            ok(p) && r <= s + c && (r < s + c || small)
        },
        |p, cx| {
            let [q, x, y, d] = p.cs(["q", "x", "y", "d"]);
            let c = p.i("c");
            let (up, lo) = bracket_qinv_lists(p);
            let lo = pad(&lo, c);
            let unit = bracket_unit(p) * y / x * sgn(c + 1);
            tsum(cx, d * x, |n| cx.phi(&up, &lo, unit / qn(q, n)))
        },
        |p, cx| bracket_qinv_rhs(p, cx, false),
    )
    .flag("the right argument is missing the factor d");
    v.push(bq);
    v.push(bq.corrected(
        "bs-bracket-qinv-corrected",
        "right argument multiplied by d",
        bq.lhs,
        |p, cx| bracket_qinv_rhs(p, cx, true),
    ));

    v
}
