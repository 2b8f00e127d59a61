//! Rendering of verification reports. JSON is authoritative; CSV has one row per sample.

use std::fmt::Write as _;

use serde::Serializer;

use super::params::JsonComplex;
use super::{SuiteReport, VerificationReport};
use crate::error::{QError, QResult};
use crate::scalar::ComplexScalar;

pub(crate) fn opt_complex<S: Serializer>(v: &Option<ComplexScalar>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(z) => s.serialize_some(&JsonComplex(*z)),
        None => s.serialize_none(),
    }
}

pub fn render_json(report: &SuiteReport) -> QResult<String> {
    let mut s = serde_json::to_string_pretty(report)
        .map_err(|e| QError::InvalidArgument(format!("could not serialize report: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn render_csv(report: &SuiteReport) -> QResult<String> {
    let io = |e: csv::Error| QError::InvalidArgument(format!("could not write CSV: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case_id", "group", "status", "sample", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err",
        "sample_status", "error",
    ])
    .map_err(io)?;
    for c in &report.cases {
        for (i, s) in c.samples.iter().enumerate() {
            let params = serde_json::to_string(&s.params).unwrap_or_default();
            let part = |v: Option<ComplexScalar>, im: bool| {
                v.map(|z| format!("{:e}", if im { z.im } else { z.re })).unwrap_or_default()
            };
            let status = serde_json::to_value(s.status).ok().and_then(|v| v.as_str().map(String::from));
            w.write_record([
                c.case_id.to_string(),
                c.group.to_string(),
                c.status.to_string(),
                i.to_string(),
                params,
                part(s.lhs_value, false),
                part(s.lhs_value, true),
                part(s.rhs_value, false),
                part(s.rhs_value, true),
                fmt_opt(s.abs_err),
                fmt_opt(s.rel_err),
                status.unwrap_or_default(),
                s.error.clone().unwrap_or_default(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| QError::InvalidArgument(format!("could not write CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| QError::InvalidArgument(e.to_string()))
}

fn verdict(c: &VerificationReport) -> &'static str {
    match (c.is_failure(), c.status) {
        (true, _) => "FAIL",
        (false, super::Status::Flagged) => "info",
        (false, _) if c.summary.n_pass == 0 => "skip",
        _ => "ok",
    }
}

/// One line per case, then a summary line.
pub fn render_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    let width = report.cases.iter().map(|c| c.case_id.len()).max().unwrap_or(0);
    for c in &report.cases {
        let s = &c.summary;
        let _ = writeln!(
            out,
            "{:4}  {:<width$}  {}  {:<13}  pass {:>3}  fail {:>3}  skip {:>3}  err {:>3}  max_rel {:>9}  {:.2}s",
            verdict(c),
            c.case_id,
            c.group,
            c.status.to_string(),
            s.n_pass,
            s.n_fail,
            s.n_skipped,
            s.n_error,
            s.max_rel_err.map(|r| format!("{r:.1e}")).unwrap_or_else(|| "-".into()),
            c.wall_time.as_secs_f64(),
        );
    }
    let failed = report.cases.iter().filter(|c| c.is_failure()).count();
    let flagged = report.cases.iter().filter(|c| c.status == super::Status::Flagged).count();
    let _ = writeln!(
        out,
        "{} cases, {} failed, {} flagged (seed {}, {} samples, tol {:e})",
        report.cases.len(),
        failed,
        flagged,
        report.seed,
        report.n_samples,
        report.tol
    );
    out
}
