//! Basic hypergeometric series: unilateral `r phi s`, bilateral `r psi s`, and the
//! `E_b(y;q)` family that the operator calculus is built on.

use crate::error::{QError, QResult};
use crate::qfactorial::{
    finish, qpoch_infinite_recip_scaled, qpoch_infinite_scaled, Outcome, QBase, Truncation, POLE_EPS,
};
use crate::scalar::{ComplexScalar, Scaled};

/// Relative margin kept from the edges of a bilateral convergence annulus.
pub const DEFAULT_MARGIN: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub upper: Vec<ComplexScalar>,
    pub lower: Vec<ComplexScalar>,
    pub base: QBase,
    pub z: ComplexScalar,
    pub bilateral: bool,
}

impl SeriesSpec {
    pub fn unilateral(upper: Vec<ComplexScalar>, lower: Vec<ComplexScalar>, base: QBase, z: ComplexScalar) -> Self {
        SeriesSpec { upper, lower, base, z, bilateral: false }
    }

    pub fn bilateral(upper: Vec<ComplexScalar>, lower: Vec<ComplexScalar>, base: QBase, z: ComplexScalar) -> Self {
        SeriesSpec { upper, lower, base, z, bilateral: true }
    }
}

/// Where `|z|` must lie for the series to converge: `lower_bound < |z| < upper_bound`,
/// each edge shrunk by the relative `margin`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainStatus {
    pub inside: bool,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub margin: f64,
}

/// Smallest `k`, stepping from `k0`, with `|1 - a q^k| < POLE_EPS`, if any. Stops early once
/// `|a q^k|` has shrunk below 1/2 (or grown past 2 for negative steps), since it can
/// no longer return to 1.
fn hits_one(a: ComplexScalar, q: ComplexScalar, k0: i64, step_up: bool, limit: usize) -> Option<i64> {
    if q.norm() == 0.0 {
        let t = if k0 == 0 { a } else { return None };
        return ((ComplexScalar::new(1.0, 0.0) - t).norm() < POLE_EPS).then_some(0);
    }
    let mut k = k0;
    let mut t = a * q.powi(k0 as i32);
    for _ in 0..limit {
        if (ComplexScalar::new(1.0, 0.0) - t).norm() < POLE_EPS {
            return Some(k);
        }
        if (step_up && t.norm() < 0.5) || (!step_up && t.norm() > 2.0) || !t.norm().is_finite() {
            return None;
        }
        if step_up {
            t *= q;
            k += 1;
        } else {
            t /= q;
            k -= 1;
        }
    }
    None
}

/// Terminating index of a unilateral series: some upper `a = q^{-m}`, `m >= 0`.
fn terminating_index(upper: &[ComplexScalar], q: ComplexScalar, limit: usize) -> Option<usize> {
    upper
        .iter()
        .filter_map(|&a| {
            // a q^m = 1 with m >= 0 means |a| >= 1 (or q = 0 and a = 1)
            hits_one(a, q, 0, true, limit).map(|m| m as usize)
        })
        .min()
}

pub fn convergence_domain(spec: &SeriesSpec) -> DomainStatus {
    convergence_domain_with_margin(spec, DEFAULT_MARGIN)
}

/// Convergence region.
///
/// For a bilateral series the positive tail behaves like `[q^{C(n,2)}]^{s-r} z^n` and
/// needs `s > r`, or `s = r` with `|z| < 1`. On the negative tail each nonzero lower
/// parameter contributes `q^{-m^2/2}` growth and each nonzero upper parameter the
/// matching decay, so with `zu`/`zl` zero upper/lower parameters the tail needs
/// `zl > zu`, or `zl = zu` with `|z| > |prod b / prod a|` over the nonzero ones.
/// A tail that terminates (upper `q^{-k}` on the right, lower `q^{k}` on the left)
/// imposes nothing.
pub fn convergence_domain_with_margin(spec: &SeriesSpec, margin: f64) -> DomainStatus {
    let q = spec.base.q();
    let (r, s) = (spec.upper.len(), spec.lower.len());
    let zabs = spec.z.norm();
    let limit = 10_000;

    let (lower_bound, upper_bound) = if !spec.bilateral {
        let upper_bound = if terminating_index(&spec.upper, q, limit).is_some() || r <= s {
            f64::INFINITY
        } else if r == s + 1 {
            1.0
        } else {
            0.0
        };
        (0.0, upper_bound)
    } else {
        let pos_stops = terminating_index(&spec.upper, q, limit).is_some();
        let neg_stops = spec.lower.iter().any(|&b| hits_one(b, q, -1, false, limit).is_some());
        let upper_bound = if pos_stops || s > r {
            f64::INFINITY
        } else if s == r {
            1.0
        } else {
            0.0
        };
        let zu = spec.upper.iter().filter(|a| a.norm() == 0.0).count();
        let zl = spec.lower.iter().filter(|b| b.norm() == 0.0).count();
        let lower_bound = if neg_stops || zl > zu {
            0.0
        } else if zl == zu {
            let pb: ComplexScalar = spec.lower.iter().filter(|b| b.norm() != 0.0).product();
            let pa: ComplexScalar = spec.upper.iter().filter(|a| a.norm() != 0.0).product();
            (pb / pa).norm()
        } else {
            f64::INFINITY
        };
        (lower_bound, upper_bound)
    };
    let inside = zabs > lower_bound * (1.0 + margin)
        && zabs < upper_bound * (1.0 - margin)
        && (!spec.bilateral || zabs > 0.0);
    DomainStatus { inside, lower_bound, upper_bound, margin }
}

/// `[(-1) q^n]^e` in extended range.
fn balance_factor(qn: Scaled, e: i64) -> Scaled {
    if e == 0 {
        Scaled::ONE
    } else {
        (-qn).powi(e)
    }
}

/// Shared stopping rule: `small` counts successive terms below `eps * peak`.
struct Stopper {
    thresh: f64,
    peak: f64,
    small: usize,
    needed: usize,
}

impl Stopper {
    fn new(trunc: &Truncation) -> Stopper {
        Stopper { thresh: trunc.eps.log2(), peak: f64::NEG_INFINITY, small: 0, needed: trunc.consecutive_small }
    }

    /// Record a term after it has been added to `sum`; true once the tail may stop.
    fn observe(&mut self, term: Scaled, sum: Scaled) -> bool {
        self.peak = self.peak.max(sum.log2_abs());
        if term.is_zero() || term.log2_abs() < self.thresh + self.peak {
            self.small += 1;
        } else {
            self.small = 0;
        }
        self.small >= self.needed
    }

    fn restart(&mut self) {
        self.small = 0;
    }
}

/// Unilateral `r phi s` with the balancing factor `[(-1)^n q^{C(n,2)}]^{1+s-r}`.
pub fn phi(spec: &SeriesSpec, trunc: &Truncation) -> QResult<ComplexScalar> {
    if spec.bilateral {
        return Err(QError::InvalidArgument("phi needs a unilateral series spec".into()));
    }
    let o = phi_scaled(&spec.upper, &spec.lower, spec.base, spec.z, trunc)?;
    finish(o.value, "phi")
}

pub fn phi_scaled(
    upper: &[ComplexScalar],
    lower: &[ComplexScalar],
    base: QBase,
    z: ComplexScalar,
    trunc: &Truncation,
) -> QResult<Outcome> {
    let q = base.q();
    let (r, s) = (upper.len() as i64, lower.len() as i64);
    let e = 1 + s - r;
    let stop_at = terminating_index(upper, q, trunc.max_terms);
    if stop_at.is_none() {
        if r > s + 1 {
            return Err(QError::Domain(format!(
                "{r}phi{s} with r > s+1 diverges unless an upper parameter is q^-m"
            )));
        }
        if r == s + 1 && z.norm() >= 1.0 {
            return Err(QError::Domain(format!("{r}phi{s} needs |z| < 1, got |z| = {}", z.norm())));
        }
    }
    let one = ComplexScalar::new(1.0, 0.0);
    let mut t = Scaled::ONE;
    let mut sum = Scaled::ONE;
    let mut stop = Stopper::new(trunc);
    stop.observe(t, sum);
    let mut qn = one;
    for n in 0..trunc.max_terms {
        if stop_at == Some(n) {
            return Ok(Outcome { value: sum, terms: n + 1 });
        }
        let mut ratio = Scaled::from(z);
        for &a in upper {
            ratio *= one - a * qn;
        }
        for (j, &b) in lower.iter().enumerate() {
            let f = one - b * qn;
            if f.norm() < POLE_EPS {
                return Err(QError::Pole(format!(
                    "lower parameter #{} = {b} equals q^-{n}",
                    j + 1
                )));
            }
            ratio = ratio / f;
        }
        ratio *= balance_factor(Scaled::from(qn), e);
        qn *= q;
        ratio = ratio / (one - qn);
        t *= ratio;
        sum += t;
        if !sum.is_valid() {
            return Err(QError::Overflow(format!("phi partial sum at n = {}", n + 1)));
        }
        if stop.observe(t, sum) {
            return Ok(Outcome { value: sum, terms: n + 2 });
        }
    }
    Err(QError::BudgetExceeded { what: format!("{r}phi{s} at z = {z}"), limit: trunc.max_terms })
}

/// Result of a bilateral sum with the number of terms used on each side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bilateral {
    pub value: Scaled,
    pub positive_terms: usize,
    pub negative_terms: usize,
}

impl Bilateral {
    pub fn max_tail(&self) -> usize {
        self.positive_terms.max(self.negative_terms)
    }
}

/// Bilateral `r psi s` with the factor `[(-1)^n q^{C(n,2)}]^{s-r}`.
pub fn psi(spec: &SeriesSpec, trunc: &Truncation) -> QResult<ComplexScalar> {
    if !spec.bilateral {
        return Err(QError::InvalidArgument("psi needs a bilateral series spec".into()));
    }
    let o = psi_scaled(&spec.upper, &spec.lower, spec.base, spec.z, trunc)?;
    finish(o.value, "psi")
}

pub fn psi_scaled(
    upper: &[ComplexScalar],
    lower: &[ComplexScalar],
    base: QBase,
    z: ComplexScalar,
    trunc: &Truncation,
) -> QResult<Bilateral> {
    let spec = SeriesSpec::bilateral(upper.to_vec(), lower.to_vec(), base, z);
    let dom = convergence_domain(&spec);
    if z.norm() == 0.0 {
        return Err(QError::Domain("bilateral series needs z != 0".into()));
    }
    if base.is_zero() {
        return Err(QError::Domain("bilateral series needs q != 0".into()));
    }
    if !dom.inside {
        return Err(QError::Domain(format!(
            "|z| = {} outside ({}, {}) with margin {}",
            z.norm(),
            dom.lower_bound,
            dom.upper_bound,
            dom.margin
        )));
    }
    let (r, s) = (upper.len() as i64, lower.len() as i64);
    let e = s - r;
    let q = base.q();
    let one = ComplexScalar::new(1.0, 0.0);
    let mut sum = Scaled::ONE;
    let mut stop = Stopper::new(trunc);
    stop.observe(Scaled::ONE, sum);

    // n >= 0: t_{n+1} = t_n * prod(1 - a q^n) / prod(1 - b q^n) * z * [(-1) q^n]^{s-r}
    let mut t = Scaled::ONE;
    let mut qn = one;
    let mut positive_terms = 1usize;
    let mut finished = false;
    for n in 0..trunc.max_terms {
        let mut ratio = Scaled::from(z);
        let mut ends = false;
        for &a in upper {
            let f = one - a * qn;
            if f.norm() < POLE_EPS {
                ends = true;
            }
            ratio *= f;
        }
        if ends {
            finished = true;
            break;
        }
        for (j, &b) in lower.iter().enumerate() {
            let f = one - b * qn;
            if f.norm() < POLE_EPS {
                return Err(QError::Pole(format!("lower parameter #{} = {b} equals q^-{n}", j + 1)));
            }
            ratio = ratio / f;
        }
        ratio *= balance_factor(Scaled::from(qn), e);
        t *= ratio;
        sum += t;
        positive_terms += 1;
        qn *= q;
        if stop.observe(t, sum) {
            finished = true;
            break;
        }
    }
    if !finished {
        return Err(QError::BudgetExceeded { what: format!("{r}psi{s} positive tail"), limit: trunc.max_terms });
    }

    // n = -m: t_{-m} = t_{-m+1} * prod(1 - b q^-m) / prod(1 - a q^-m) * [(-1) q^m]^{s-r} / z
    stop.restart();
    let mut t = Scaled::ONE;
    let mut qm = Scaled::ONE;
    let qs = Scaled::from(q);
    let mut negative_terms = 0usize;
    finished = false;
    for m in 1..=trunc.max_terms {
        qm *= qs;
        let mut ratio = Scaled::from(z).recip() * balance_factor(qm, e);
        let mut vanishes = false;
        for &b in lower {
            let f = Scaled::ONE - Scaled::from(b) / qm;
            if f.abs() < POLE_EPS {
                vanishes = true;
            }
            ratio *= f;
        }
        if vanishes {
            finished = true;
            break;
        }
        for (i, &a) in upper.iter().enumerate() {
            let f = Scaled::ONE - Scaled::from(a) / qm;
            if f.abs() < POLE_EPS {
                return Err(QError::Pole(format!("upper parameter #{} = {a} equals q^{m}", i + 1)));
            }
            ratio = ratio / f;
        }
        t *= ratio;
        sum += t;
        negative_terms += 1;
        if !sum.is_valid() {
            return Err(QError::Overflow(format!("{r}psi{s} negative tail at n = -{m}")));
        }
        if stop.observe(t, sum) {
            finished = true;
            break;
        }
    }
    if !finished {
        return Err(QError::BudgetExceeded { what: format!("{r}psi{s} negative tail"), limit: trunc.max_terms });
    }
    Ok(Bilateral { value: sum, positive_terms, negative_terms })
}

/// `sum_{n in Z} term(n)` with each tail stopped by the same rule as `psi`.
pub fn bilateral_sum<F>(mut term: F, what: &str, trunc: &Truncation) -> QResult<Bilateral>
where
    F: FnMut(i64) -> QResult<Scaled>,
{
    let mut sum = Scaled::ZERO;
    let mut stop = Stopper::new(trunc);
    let mut counts = [0usize; 2];
    for (side, dir) in [1i64, -1].into_iter().enumerate() {
        stop.restart();
        let start = if dir > 0 { 0 } else { -1 };
        let mut finished = false;
        for j in 0..trunc.max_terms as i64 {
            let n = start + dir * j;
            let t = term(n).map_err(|e| e.context(format!("{what} at n = {n}")))?;
            sum += t;
            counts[side] += 1;
            if !sum.is_valid() {
                return Err(QError::Overflow(format!("{what} partial sum at n = {n}")));
            }
            if stop.observe(t, sum) {
                finished = true;
                break;
            }
        }
        if !finished {
            return Err(QError::BudgetExceeded { what: what.to_string(), limit: trunc.max_terms });
        }
    }
    Ok(Bilateral { value: sum, positive_terms: counts[0], negative_terms: counts[1] })
}

/// `E_b(y;q) = sum_n q^{b C(n,2)} y^n / (q;q)_n`, via its product form for `b = 0, 1`.
pub fn e_b(y: ComplexScalar, base: QBase, b: u32, trunc: &Truncation) -> QResult<ComplexScalar> {
    finish(e_b_scaled(y, base, b, trunc)?.value, "E_b")
}

pub fn e_b_scaled(y: ComplexScalar, base: QBase, b: u32, trunc: &Truncation) -> QResult<Outcome> {
    match b {
        0 => qpoch_infinite_recip_scaled(y, base, trunc).map_err(|e| e.context("E_0(y)")),
        1 => qpoch_infinite_scaled(-y, base, trunc),
        _ => e_b_series_scaled(y, base, b, trunc),
    }
}

/// The defining series of `E_b`, for any `b` (needs `|y| < 1` when `b = 0`).
pub fn e_b_series(y: ComplexScalar, base: QBase, b: u32, trunc: &Truncation) -> QResult<ComplexScalar> {
    finish(e_b_series_scaled(y, base, b, trunc)?.value, "E_b series")
}

pub fn e_b_series_scaled(y: ComplexScalar, base: QBase, b: u32, trunc: &Truncation) -> QResult<Outcome> {
    if b == 0 && y.norm() >= 1.0 {
        return Err(QError::Domain(format!("E_0 series needs |y| < 1, got |y| = {}", y.norm())));
    }
    let q = base.q();
    let qs = Scaled::from(q);
    let one = ComplexScalar::new(1.0, 0.0);
    let mut t = Scaled::ONE;
    let mut sum = Scaled::ONE;
    let mut stop = Stopper::new(trunc);
    stop.observe(t, sum);
    let mut qn = Scaled::ONE;
    let mut qn_plain = one;
    for n in 0..trunc.max_terms {
        // t_{n+1} = t_n q^{b n} y / (1 - q^{n+1})
        let step = qn.powi(b as i64) * y;
        qn *= qs;
        qn_plain *= q;
        t = t * step / (one - qn_plain);
        sum += t;
        if stop.observe(t, sum) {
            return Ok(Outcome { value: sum, terms: n + 2 });
        }
    }
    Err(QError::BudgetExceeded { what: format!("E_{b} series at y = {y}"), limit: trunc.max_terms })
}

/// `K_inf(y) = E_2(y;q)`.
pub fn kinf(y: ComplexScalar, base: QBase, trunc: &Truncation) -> QResult<ComplexScalar> {
    e_b(y, base, 2, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfactorial::{qpoch_finite, qpoch_infinite};
    use crate::scalar::c64;
    use crate::theta::{theta_series, ThetaArg};

    fn qb(q: f64) -> QBase {
        QBase::new(c64(q, 0.0)).unwrap()
    }
    fn close(a: ComplexScalar, b: ComplexScalar, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn phi_at_zero_argument_is_one() {
        let t = Truncation::default();
        let s = SeriesSpec::unilateral(vec![c64(0.3, 0.0)], vec![], qb(0.4), c64(0.0, 0.0));
        assert_eq!(phi(&s, &t).unwrap(), c64(1.0, 0.0));
    }

    #[test]
    fn phi_q_binomial_example() {
        let t = Truncation::default();
        let (a, z, q) = (c64(0.3, 0.0), c64(0.5, 0.0), qb(0.4));
        let s = SeriesSpec::unilateral(vec![a], vec![], q, z);
        let want = qpoch_infinite(a * z, q, &t).unwrap() / qpoch_infinite(z, q, &t).unwrap();
        assert!(close(phi(&s, &t).unwrap(), want, 1e-13));
    }

    #[test]
    fn phi_terminating_matches_three_term_sum() {
        let t = Truncation::default();
        let q = qb(0.4);
        let a = c64(0.4f64.powi(-2), 0.0);
        let (b, c, z) = (c64(0.2, 0.1), c64(-0.3, 0.2), c64(3.0, -1.0));
        let s = SeriesSpec::unilateral(vec![a, b], vec![c], q, z);
        let mut want = c64(0.0, 0.0);
        for n in 0..3 {
            want += qpoch_finite(a, q, n).unwrap() * qpoch_finite(b, q, n).unwrap()
                / (qpoch_finite(c, q, n).unwrap() * qpoch_finite(q.q(), q, n).unwrap())
                * z.powi(n as i32);
        }
        assert!(close(phi(&s, &t).unwrap(), want, 1e-12));
    }

    #[test]
    fn phi_domain_errors() {
        let t = Truncation::default();
        let q = qb(0.4);
        let s = SeriesSpec::unilateral(vec![c64(0.3, 0.0)], vec![], q, c64(1.2, 0.0));
        assert!(matches!(phi(&s, &t), Err(QError::Domain(_))));
        let s = SeriesSpec::unilateral(vec![c64(0.3, 0.0); 3], vec![], q, c64(0.1, 0.0));
        assert!(matches!(phi(&s, &t), Err(QError::Domain(_))));
    }

    #[test]
    fn psi_with_lower_q_reduces_to_phi() {
        let t = Truncation::default();
        let q = qb(0.4);
        let (a, z) = (c64(0.6, 0.2), c64(0.5, 0.1));
        let bil = SeriesSpec::bilateral(vec![a], vec![q.q()], q, z);
        let uni = SeriesSpec::unilateral(vec![a], vec![], q, z);
        assert!(close(psi(&bil, &t).unwrap(), phi(&uni, &t).unwrap(), 1e-13));
    }

    #[test]
    fn psi_ramanujan_example() {
        let t = Truncation::default();
        let q = qb(0.4);
        let (a, b, z) = (c64(0.6, 0.0), c64(0.1, 0.0), c64(0.5, 0.0));
        let s = SeriesSpec::bilateral(vec![a], vec![b], q, z);
        let p = |v: ComplexScalar| qpoch_infinite(v, q, &t).unwrap();
        let qq = q.q();
        let want = p(qq) * p(b / a) * p(a * z) * p(qq / (a * z)) / (p(b) * p(qq / a) * p(z) * p(b / (a * z)));
        assert!(close(psi(&s, &t).unwrap(), want, 1e-12));
    }

    #[test]
    fn psi_0psi1_with_zero_lower_is_theta() {
        // sum (-1)^n q^{C(n,2)} z^n = theta(-z/q)
        let t = Truncation::default();
        let q = qb(0.35);
        let z = c64(0.4, 0.3);
        let s = SeriesSpec::bilateral(vec![], vec![c64(0.0, 0.0)], q, z);
        let want = theta_series(ThetaArg::new(-z / q.q(), q).unwrap(), &t).unwrap();
        assert!(close(psi(&s, &t).unwrap(), want, 1e-12));
    }

    #[test]
    fn convergence_domain_examples() {
        let q = qb(0.4);
        let s = SeriesSpec::bilateral(vec![c64(0.6, 0.0)], vec![c64(0.1, 0.0)], q, c64(0.5, 0.0));
        let d = convergence_domain(&s);
        assert!(d.inside);
        assert!((d.lower_bound - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(d.upper_bound, 1.0);
        let s = SeriesSpec::bilateral(vec![c64(0.6, 0.0)], vec![c64(0.1, 0.0)], q, c64(0.1, 0.0));
        assert!(!convergence_domain(&s).inside);
        // s > r with an unmatched zero lower parameter: every z != 0
        let s = SeriesSpec::bilateral(vec![c64(0.3, 0.0)], vec![c64(0.2, 0.0), c64(0.0, 0.0)], q, c64(40.0, 0.0));
        let d = convergence_domain(&s);
        assert!(d.inside && d.lower_bound == 0.0 && d.upper_bound.is_infinite());
        // 0psi1(-;b;z) still needs |z| > |b|
        let s = SeriesSpec::bilateral(vec![], vec![c64(0.5, 0.0)], q, c64(0.2, 0.0));
        let d = convergence_domain(&s);
        assert!(!d.inside && (d.lower_bound - 0.5).abs() < 1e-15);
    }

    #[test]
    fn psi_outside_domain_is_an_error() {
        let t = Truncation::default();
        let s = SeriesSpec::bilateral(vec![c64(0.6, 0.0)], vec![c64(0.1, 0.0)], qb(0.4), c64(0.1, 0.0));
        assert!(matches!(psi(&s, &t), Err(QError::Domain(_))));
    }

    #[test]
    fn bilateral_sum_reproduces_theta() {
        let t = Truncation::default();
        let q = 0.3f64;
        let x = c64(0.9, -0.4);
        let got = bilateral_sum(
            |n| Ok(Scaled::from(c64(q, 0.0)).powi(n * (n + 1) / 2) * Scaled::from(x).powi(n)),
            "theta sum",
            &t,
        )
        .unwrap();
        let want = crate::theta::theta(ThetaArg::new(x, qb(q)).unwrap(), &t).unwrap();
        assert!(close(got.value.to_complex(), want, 1e-13));
        assert!(got.positive_terms < 40 && got.negative_terms < 40);
    }

    #[test]
    fn e_b_examples() {
        let t = Truncation::default();
        let q = qb(0.5);
        for b in 0..5 {
            assert_eq!(e_b(c64(0.0, 0.0), q, b, &t).unwrap(), c64(1.0, 0.0));
        }
        let y = c64(0.3, 0.0);
        assert!(close(e_b(y, q, 1, &t).unwrap(), qpoch_infinite(-y, q, &t).unwrap(), 1e-15));
        assert!(close(e_b(y, q, 0, &t).unwrap(), e_b_series(y, q, 0, &t).unwrap(), 1e-10));
        assert!(close(e_b(y, q, 1, &t).unwrap(), e_b_series(y, q, 1, &t).unwrap(), 1e-12));
    }

    #[test]
    fn kinf_examples() {
        let t = Truncation::default();
        assert_eq!(kinf(c64(0.0, 0.0), qb(0.5), &t).unwrap(), c64(1.0, 0.0));
        // 40-term brute force of sum q^{n(n-1)} y^n / (q;q)_n at y = 1, q = 1/2
        let q = 0.5f64;
        let mut want = 0.0;
        let mut qq = 1.0;
        for n in 0..40i32 {
            if n > 0 {
                qq *= 1.0 - q.powi(n);
            }
            want += q.powi(n * (n - 1)) / qq;
        }
        let got = kinf(c64(1.0, 0.0), qb(0.5), &t).unwrap();
        assert!((got.re - want).abs() < 1e-12 && got.im == 0.0);
        let y = c64(-2.0, 0.0);
        assert_eq!(kinf(y, qb(0.3), &t).unwrap(), e_b(y, qb(0.3), 2, &t).unwrap());
    }

    #[test]
    fn e0_pole() {
        let t = Truncation::default();
        assert!(matches!(e_b(c64(1.0, 0.0), qb(0.5), 0, &t), Err(QError::Pole(_))));
    }
}
