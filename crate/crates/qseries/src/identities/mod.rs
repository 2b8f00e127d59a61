//! Registry of summation and transformation identities with randomized numerical checks.
//!
//! Each case pairs a left-hand evaluator built from series, operators or derivatives with a
//! right-hand evaluator built from products and `phi` values. A seeded sampler draws parameters,
//! an independent validator rejects draws outside the identity's domain, and [`verify`] compares
//! the two sides. Cases whose printed statement fails numerically carry [`Status::Flagged`];
//! when a correction was confirmed it is registered next to them with a `-corrected` suffix.

mod bilateral;
mod ctx;
mod derivatives;
mod foundations;
mod operators;
mod params;
mod report;
mod theta_sums;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QError, QResult};
use crate::qfactorial::{QBase, Truncation};
use crate::scalar::{ComplexScalar, Scaled};

pub use ctx::EvalCtx;
pub use params::{Draw, JsonComplex, ParamValue, Params};
pub use report::{render_csv, render_json, render_text};

/// Draws are retried this many times before a sample is recorded as skipped.
pub const MAX_ATTEMPTS: usize = 100;
/// Two values this small count as equal when their difference is below [`ABS_TOL`].
pub const TINY: f64 = 1e-12;
pub const ABS_TOL: f64 = 1e-14;
const REL_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Group {
    A,
    B,
    C,
    D,
    E,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::A, Group::B, Group::C, Group::D, Group::E];

    pub fn title(self) -> &'static str {
        match self {
            Group::A => "foundations",
            Group::B => "derivative lemmas",
            Group::C => "operator closed forms",
            Group::D => "bilateral theta sums",
            Group::E => "bilateral psi sums",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Group {
    type Err = QError;

    fn from_str(s: &str) -> QResult<Group> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Group::A),
            "B" => Ok(Group::B),
            "C" => Ok(Group::C),
            "D" => Ok(Group::D),
            "E" => Ok(Group::E),
            _ => Err(QError::InvalidArgument(format!("unknown group `{s}` (expected A-E)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExpectedPass,
    /// The printed statement fails numerically; reported, never counted as a failure.
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ExpectedPass => "expected-pass",
            Status::Flagged => "flagged",
        })
    }
}

pub type Evaluator = fn(&Params, &EvalCtx) -> QResult<Scaled>;
pub type Sampler = fn(&mut Draw);
pub type Validator = fn(&Params) -> bool;

/// One identity: `lhs(params) == rhs(params)` for every parameter set the validator accepts.
#[derive(Clone, Copy)]
pub struct IdentityCase {
    pub id: &'static str,
    pub group: Group,
    pub status: Status,
    /// Citation plus a verbatim fragment of the statement.
    pub anchor: &'static str,
    /// What is wrong with a flagged statement, or what a `-corrected` twin changes.
    pub note: &'static str,
    pub sampler: Sampler,
    pub validator: Validator,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("group", &self.group)
            .field("status", &self.status)
            .finish_non_exhaustive()
    }
}

impl IdentityCase {
    pub(crate) fn new(
        id: &'static str,
        group: Group,
        anchor: &'static str,
        sampler: Sampler,
        validator: Validator,
        lhs: Evaluator,
        rhs: Evaluator,
    ) -> Self {
        IdentityCase { id, group, status: Status::ExpectedPass, anchor, note: "", sampler, validator, lhs, rhs }
    }

    pub(crate) fn flag(mut self, note: &'static str) -> Self {
        self.status = Status::Flagged;
        self.note = note;
        self
    }

    /// The expected-pass twin of a flagged case, sharing its sampler and validator.
    pub(crate) fn corrected(&self, id: &'static str, note: &'static str, lhs: Evaluator, rhs: Evaluator) -> Self {
        IdentityCase { id, status: Status::ExpectedPass, note, lhs, rhs, ..*self }
    }
}

/// The full registry in its fixed order.
pub fn registry() -> &'static [IdentityCase] {
    static REGISTRY: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut v = foundations::cases();
        v.extend(derivatives::cases());
        v.extend(operators::cases());
        v.extend(theta_sums::cases());
        v.extend(bilateral::cases());
        v
    })
}

pub fn find(id: &str) -> Option<&'static IdentityCase> {
    registry().iter().find(|c| c.id == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleStatus {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub params: Params,
    #[serde(serialize_with = "report::opt_complex")]
    pub lhs_value: Option<ComplexScalar>,
    #[serde(serialize_with = "report::opt_complex")]
    pub rhs_value: Option<ComplexScalar>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub status: SampleStatus,
    /// Longest one-sided tail of any bilateral sum used by this sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub n_pass: usize,
    pub n_fail: usize,
    pub n_skipped: usize,
    pub n_error: usize,
    pub max_rel_err: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub case_id: &'static str,
    pub group: Group,
    pub status: Status,
    pub paper_anchor: &'static str,
    pub summary: Summary,
    pub samples: Vec<SampleRecord>,
    /// Kept out of the JSON so that reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    /// An expected-pass case fails if any sample failed or could not be evaluated.
    pub fn is_failure(&self) -> bool {
        self.status == Status::ExpectedPass && (self.summary.n_fail > 0 || self.summary.n_error > 0)
    }

    pub fn max_tail(&self) -> usize {
        self.samples.iter().filter_map(|s| s.tail_terms).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub tol: f64,
    pub n_samples: usize,
    pub cases: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn any_failure(&self) -> bool {
        self.cases.iter().any(VerificationReport::is_failure)
    }
}

/// `|l - r|` and `|l - r| / max(|l|, |r|, 1e-300)`, computed without leaving extended range.
pub fn compare(l: Scaled, r: Scaled) -> (f64, f64) {
    let d = l - r;
    if d.is_zero() {
        return (0.0, 0.0);
    }
    let scale = l.log2_abs().max(r.log2_abs()).max(REL_FLOOR.log2());
    (d.abs(), (d.log2_abs() - scale).exp2())
}

pub fn passes(l: Scaled, r: Scaled, abs_err: f64, rel_err: f64, tol: f64) -> bool {
    rel_err <= tol || (l.abs() < TINY && r.abs() < TINY && abs_err <= ABS_TOL)
}

fn resample_worthy(e: &QError) -> bool {
    matches!(e, QError::Domain(_) | QError::Pole(_))
}

fn run_sample(case: &IdentityCase, index: usize, seed: u64, tol: f64, trunc: &Truncation) -> SampleRecord {
    let mut last = Params::new();
    let mut last_reason = String::from("validator rejected every draw");
    for attempt in 0..MAX_ATTEMPTS {
        let mut d = Draw::new(seed, case.id, index, attempt);
        (case.sampler)(&mut d);
        let p = d.into_params();
        if !(case.validator)(&p) {
            last = p;
            continue;
        }
        let base = match QBase::new(p.c("q")) {
            Ok(b) => b,
            Err(e) => {
                last_reason = e.to_string();
                last = p;
                continue;
            }
        };
        let ctx = EvalCtx::new(base, *trunc);
        let sides = (case.lhs)(&p, &ctx).and_then(|l| Ok((l, (case.rhs)(&p, &ctx)?)));
        let tail = Some(ctx.max_tail()).filter(|&t| t > 0);
        match sides {
            Ok((l, r)) => {
                let (abs_err, rel_err) = compare(l, r);
                let ok = passes(l, r, abs_err, rel_err, tol);
                return SampleRecord {
                    params: p,
                    lhs_value: l.to_complex_checked(),
                    rhs_value: r.to_complex_checked(),
                    abs_err: Some(abs_err),
                    rel_err: Some(rel_err),
                    status: if ok { SampleStatus::Pass } else { SampleStatus::Fail },
                    tail_terms: tail,
                    error: None,
                };
            }
            Err(e) if resample_worthy(&e) => {
                last_reason = e.to_string();
                last = p;
            }
            Err(e) => {
                return SampleRecord {
                    params: p,
                    lhs_value: None,
                    rhs_value: None,
                    abs_err: None,
                    rel_err: None,
                    status: SampleStatus::Error,
                    tail_terms: tail,
                    error: Some(e.to_string()),
                };
            }
        }
    }
    SampleRecord {
        params: last,
        lhs_value: None,
        rhs_value: None,
        abs_err: None,
        rel_err: None,
        status: SampleStatus::Skipped,
        tail_terms: None,
        error: Some(format!("skipped after {MAX_ATTEMPTS} draws: {last_reason}")),
    }
}

pub fn run_case(case: &IdentityCase, n_samples: usize, seed: u64, tol: f64, trunc: &Truncation) -> VerificationReport {
    let start = Instant::now();
    let samples: Vec<SampleRecord> = (0..n_samples).map(|i| run_sample(case, i, seed, tol, trunc)).collect();
    let mut summary = Summary::default();
    for s in &samples {
        match s.status {
            SampleStatus::Pass => summary.n_pass += 1,
            SampleStatus::Fail => summary.n_fail += 1,
            SampleStatus::Skipped => summary.n_skipped += 1,
            SampleStatus::Error => summary.n_error += 1,
        }
        if let Some(r) = s.rel_err {
            summary.max_rel_err = Some(summary.max_rel_err.map_or(r, |m: f64| m.max(r)));
        }
    }
    VerificationReport {
        case_id: case.id,
        group: case.group,
        status: case.status,
        paper_anchor: case.anchor,
        summary,
        samples,
        wall_time: start.elapsed(),
    }
}

fn check_run_args(n_samples: usize, tol: f64) -> QResult<()> {
    if n_samples == 0 {
        return Err(QError::InvalidArgument("n_samples must be positive".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(QError::InvalidArgument(format!("tol must be a positive number, got {tol}")));
    }
    Ok(())
}

pub fn verify(case_id: &str, n_samples: usize, seed: u64, tol: f64, trunc: &Truncation) -> QResult<VerificationReport> {
    let case = find(case_id).ok_or_else(|| QError::UnknownIdentity(case_id.to_string()))?;
    check_run_args(n_samples, tol)?;
    Ok(run_case(case, n_samples, seed, tol, trunc))
}

/// Runs the given cases on the current rayon pool; the output keeps the input order.
pub fn verify_cases(cases: &[&IdentityCase], n_samples: usize, seed: u64, tol: f64, trunc: &Truncation) -> QResult<SuiteReport> {
    check_run_args(n_samples, tol)?;
    let reports = cases.par_iter().map(|c| run_case(c, n_samples, seed, tol, trunc)).collect();
    Ok(SuiteReport { seed, tol, n_samples, cases: reports })
}

pub fn verify_all(seed: u64, n_samples: usize, tol: f64, trunc: &Truncation) -> QResult<SuiteReport> {
    let all: Vec<&IdentityCase> = registry().iter().collect();
    verify_cases(&all, n_samples, seed, tol, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert!(reg.len() >= 55, "{}", reg.len());
        let ids: HashSet<_> = reg.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), reg.len(), "duplicate ids");
        let r = find("ramanujan-1psi1").unwrap();
        assert_eq!(r.group, Group::A);
        assert_eq!(reg.iter().filter(|c| c.group == Group::A).count(), 7);
        for c in reg {
            assert!(c.id.chars().all(|ch| ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '-'), "{}", c.id);
            assert!(!c.anchor.is_empty(), "{}", c.id);
            if c.status == Status::Flagged {
                assert!(!c.note.is_empty(), "{}", c.id);
            }
            if let Some(base) = c.id.strip_suffix("-corrected") {
                let orig = find(base).unwrap_or_else(|| panic!("{} has no original", c.id));
                assert_eq!(orig.status, Status::Flagged);
                assert_eq!(c.status, Status::ExpectedPass);
            }
        }
    }

    #[test]
    fn unknown_id() {
        let r = verify("no-such-id", 5, 42, 1e-8, &Truncation::default());
        assert!(matches!(r, Err(QError::UnknownIdentity(_))));
    }

    #[test]
    fn relative_error_floor() {
        let b = 1.0 + 1e-10;
        let (a, r) = compare(Scaled::from(1.0), Scaled::from(b));
        assert!((a - (b - 1.0)).abs() < 1e-24 && (r - (b - 1.0) / b).abs() < 1e-24);
        let z = Scaled::ZERO;
        assert_eq!(compare(z, z), (0.0, 0.0));
        let tiny = Scaled::from(1e-15);
        let (a, r) = compare(tiny, z);
        assert!((r - 1.0).abs() < 1e-15 && passes(tiny, z, a, r, 1e-8));
        let small = Scaled::from(1e-13);
        let (a, r) = compare(small, z);
        assert!(!passes(small, z, a, r, 1e-8));
    }
}
