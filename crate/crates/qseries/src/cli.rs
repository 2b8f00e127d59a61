//! Command-line front end: `eval`, `list` and `verify`.
//!
//! Exit codes: 0 success, 1 an expected-pass identity failed, 2 bad input (parse errors,
//! unknown group or id), 3 domain, pole or overflow errors, 4 budget or divergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::QError;
use crate::hyperseries::{e_b_scaled, phi_scaled, psi_scaled};
use crate::identities::{self, render_csv, render_json, render_text, Group, IdentityCase, JsonComplex};
use crate::qderivative::Power;
use crate::qfactorial::{finish, qpoch_finite_scaled, qpoch_infinite_scaled, QBase, Truncation};
use crate::qoperator::{apply_eop_scaled, EOpSpec, Sign};
use crate::scalar::ComplexScalar;
use crate::theta::{theta_series_scaled, ThetaArg};

pub const ENV_MAX_TERMS: &str = "QSERIES_MAX_TERMS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "qseries", version, about = "Evaluate q-series and verify summation identities")]
pub struct Cli {
    #[command(flatten)]
    pub config: GlobalFlags,
    #[command(subcommand)]
    pub command: Command,
}

/// Run options shared by every subcommand.
#[derive(Debug, Args)]
pub struct GlobalFlags {
    /// Relative size below which a term counts as negligible.
    #[arg(long, global = true, default_value_t = 1e-14)]
    pub eps: f64,
    /// Term budget per series (default 10000, or $QSERIES_MAX_TERMS).
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    /// Relative tolerance for `verify`.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Samples per identity for `verify`.
    #[arg(long, global = true, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for `verify` (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity and print its value and the number of terms used.
    Eval(EvalArgs),
    /// List registered identities, sorted by group and id.
    List {
        #[arg(long)]
        group: Option<String>,
    },
    /// Check identities on seeded random samples.
    Verify {
        /// Identity id; repeat for several.
        #[arg(long = "id", required_unless_present = "all")]
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    /// (a;q)_n, or (a;q)_inf without --n
    Qpoch,
    /// theta(x;q)
    Theta,
    /// r phi s (--upper, --lower, --z)
    Phi,
    /// r psi s (--upper, --lower, --z)
    Psi,
    /// E_b(y;q)
    Eb,
    /// K_inf(y) = E_2(y;q)
    Kinf,
    /// E_q(y D_{q^sign} | q^b) applied to x^n at --x
    Eop,
}

/// Complex arguments take literals like `0.3+0.1i`, `0.5` or `-0.2i`; lists are comma
/// separated and may be empty.
#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub kind: EvalKind,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub upper: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lower: Option<String>,
    #[arg(long)]
    pub b: Option<u32>,
    /// +1 for D_q, -1 for D_{q^-1}.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub sign: i32,
}

/// Everything that ends a run early, with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Kernel(QError),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 2,
            CliError::Kernel(e) => match e {
                QError::Domain(_) | QError::Pole(_) | QError::Overflow(_) => 3,
                QError::BudgetExceeded { .. } | QError::Divergence(_) => 4,
                QError::InvalidArgument(_) | QError::UnknownIdentity(_) => 2,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Kernel(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Kernel(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parse `re`, `re+imi`, `re-imi`, `imi`, `i` or `-i`. Whitespace around the literal is ignored.
pub fn parse_complex(s: &str) -> Result<ComplexScalar, String> {
    let t = s.trim();
    let bad = || format!("`{s}` is not a complex literal (expected e.g. 0.3+0.1i, 0.5 or -0.2i)");
    if t.is_empty() {
        return Err(bad());
    }
    let num = |p: &str| -> Result<f64, String> {
        let v: f64 = p.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ComplexScalar::new(num(t)?, 0.0));
    };
    // The imaginary part starts at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => num(other)?,
    };
    Ok(ComplexScalar::new(re, im))
}

/// Shortest text that [`parse_complex`] maps back to exactly `z`.
pub fn format_complex(z: ComplexScalar) -> String {
    match (z.re, z.im) {
        (re, 0.0) => format!("{re}"),
        (0.0, im) => format!("{im}i"),
        (re, im) if im < 0.0 => format!("{re}{im}i"),
        (re, im) => format!("{re}+{im}i"),
    }
}

fn complex_arg(name: &str, v: &Option<String>) -> Result<ComplexScalar, CliError> {
    let s = v.as_deref().ok_or_else(|| CliError::Usage(format!("missing --{name}")))?;
    parse_complex(s).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn list_arg(name: &str, v: &Option<String>) -> Result<Vec<ComplexScalar>, CliError> {
    let s = v.as_deref().unwrap_or("");
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| parse_complex(p).map_err(|e| CliError::Usage(format!("--{name}: {e}"))))
        .collect()
}

fn truncation(flags: &GlobalFlags) -> Result<Truncation, CliError> {
    let max_terms = match flags.max_terms {
        Some(m) => m,
        None => match std::env::var(ENV_MAX_TERMS) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{ENV_MAX_TERMS}=`{v}` is not a positive integer")))?,
            Err(_) => Truncation::default().max_terms,
        },
    };
    Truncation::new(flags.eps, max_terms, Truncation::default().consecutive_small)
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// A value and the number of terms (or factors) it took.
#[derive(Debug, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "as_json_complex")]
    pub value: ComplexScalar,
    pub terms: usize,
}

fn as_json_complex<S: serde::Serializer>(z: &ComplexScalar, s: S) -> Result<S::Ok, S::Error> {
    JsonComplex(*z).serialize(s)
}

pub fn evaluate(args: &EvalArgs, trunc: &Truncation) -> Result<Evaluation, CliError> {
    let q = parse_complex(&args.q).map_err(|e| CliError::Usage(format!("--q: {e}")))?;
    let base = QBase::new(q)?;
    let (value, terms, what) = match args.kind {
        EvalKind::Qpoch => {
            let a = complex_arg("a", &args.a)?;
            match args.n {
                Some(n) => (qpoch_finite_scaled(a, base, n)?, n.unsigned_abs() as usize, "(a;q)_n"),
                None => {
                    let o = qpoch_infinite_scaled(a, base, trunc)?;
                    (o.value, o.terms, "(a;q)_inf")
                }
            }
        }
        EvalKind::Theta => {
            let x = complex_arg("x", &args.x)?;
            let o = theta_series_scaled(ThetaArg::new(x, base)?, trunc)?;
            (o.value, o.terms, "theta")
        }
        EvalKind::Phi => {
            let (up, lo) = (list_arg("upper", &args.upper)?, list_arg("lower", &args.lower)?);
            let o = phi_scaled(&up, &lo, base, complex_arg("z", &args.z)?, trunc)?;
            (o.value, o.terms, "phi")
        }
        EvalKind::Psi => {
            let (up, lo) = (list_arg("upper", &args.upper)?, list_arg("lower", &args.lower)?);
            let o = psi_scaled(&up, &lo, base, complex_arg("z", &args.z)?, trunc)?;
            (o.value, o.positive_terms + o.negative_terms, "psi")
        }
        EvalKind::Eb | EvalKind::Kinf => {
            let b = match args.kind {
                EvalKind::Kinf => 2,
                _ => args.b.ok_or_else(|| CliError::Usage("missing --b".into()))?,
            };
            let o = e_b_scaled(complex_arg("y", &args.y)?, base, b, trunc)?;
            (o.value, o.terms, "E_b")
        }
        EvalKind::Eop => {
            let b = args.b.ok_or_else(|| CliError::Usage("missing --b".into()))?;
            let sign = Sign::from_i32(args.sign).map_err(|e| CliError::Usage(format!("--sign: {e}")))?;
            let op = EOpSpec::new(complex_arg("y", &args.y)?, base, b, sign);
            let f = Power(args.n.unwrap_or(0));
            let o = apply_eop_scaled(&op, &f, complex_arg("x", &args.x)?, trunc)?;
            (o.value, o.terms, "operator value")
        }
    };
    Ok(Evaluation { value: finish(value, what)?, terms })
}

fn render_eval(e: &Evaluation, format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Text => format!("{}\nterms: {}\n", format_complex(e.value), e.terms),
        OutputFormat::Json => serde_json::to_string_pretty(e).map_err(std::io::Error::other)? + "\n",
        OutputFormat::Csv => format!("re,im,terms\n{},{},{}\n", e.value.re, e.value.im, e.terms),
    })
}

#[derive(Serialize)]
struct ListRow {
    id: &'static str,
    group: Group,
    status: identities::Status,
    paper_anchor: &'static str,
}

/// Registry entries in `(group, id)` order, optionally restricted to one group.
pub fn list_cases(group: Option<&str>) -> Result<Vec<&'static IdentityCase>, CliError> {
    let group = group.map(|g| g.parse::<Group>().map_err(|e| CliError::Usage(e.to_string()))).transpose()?;
    let mut rows: Vec<_> = identities::registry().iter().filter(|c| group.is_none_or(|g| c.group == g)).collect();
    rows.sort_by_key(|c| (c.group, c.id));
    Ok(rows)
}

fn render_list(rows: &[&IdentityCase], format: OutputFormat) -> Result<String, CliError> {
    let rows: Vec<ListRow> = rows
        .iter()
        .map(|c| ListRow { id: c.id, group: c.group, status: c.status, paper_anchor: c.anchor })
        .collect();
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(&rows).map_err(std::io::Error::other)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(std::io::Error::other)?;
            }
            let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
            Ok(String::from_utf8_lossy(&bytes).into_owned())
        }
        OutputFormat::Text => {
            let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "{:<width$}  {}  {:<13}  {}", r.id, r.group, r.status, r.paper_anchor);
            }
            Ok(s)
        }
    }
}

fn run_verify(flags: &GlobalFlags, ids: &[String], all: bool, trunc: &Truncation) -> Result<(String, bool), CliError> {
    let cases: Vec<&IdentityCase> = if all {
        identities::registry().iter().collect()
    } else {
        ids.iter()
            .map(|id| identities::find(id).ok_or_else(|| CliError::Kernel(QError::UnknownIdentity(id.clone()))))
            .collect::<Result<_, _>>()?
    };
    if flags.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let run = || identities::verify_cases(&cases, flags.samples, flags.seed, flags.tol, trunc);
    let report = match flags.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let text = match flags.format {
        OutputFormat::Json => render_json(&report)?,
        OutputFormat::Csv => render_csv(&report)?,
        OutputFormat::Text => render_text(&report),
    };
    Ok((text, report.any_failure()))
}

fn emit(flags: &GlobalFlags, text: &str) -> Result<(), CliError> {
    match &flags.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Parsed-argument entry point; returns the process exit code.
pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let flags = &cli.config;
    let trunc = truncation(flags)?;
    match &cli.command {
        Command::Eval(args) => {
            let e = evaluate(args, &trunc)?;
            emit(flags, &render_eval(&e, flags.format)?)?;
            Ok(0)
        }
        Command::List { group } => {
            let rows = list_cases(group.as_deref())?;
            emit(flags, &render_list(&rows, flags.format)?)?;
            Ok(0)
        }
        Command::Verify { ids, all } => {
            let (text, failed) = run_verify(flags, ids, *all, &trunc)?;
            emit(flags, &text)?;
            Ok(if failed { 1 } else { 0 })
        }
    }
}

/// Full entry point used by the binary: parse, run, print errors, return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| ComplexScalar::new(re, im);
        assert_eq!(parse_complex("0.3+0.1i"), Ok(c(0.3, 0.1)));
        assert_eq!(parse_complex("0.5"), Ok(c(0.5, 0.0)));
        assert_eq!(parse_complex("-0.2i"), Ok(c(0.0, -0.2)));
        assert_eq!(parse_complex("1e-3-2E+1i"), Ok(c(1e-3, -20.0)));
        assert_eq!(parse_complex(" -i "), Ok(c(0.0, -1.0)));
        assert_eq!(parse_complex("2+i"), Ok(c(2.0, 1.0)));
        for bad in ["", "i2", "0.3+", "abc", "1+2j", "inf", "nan"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatted_values_reparse() {
        for z in [
            ComplexScalar::new(0.328125, 0.0),
            ComplexScalar::new(0.0, -0.2),
            ComplexScalar::new(-1.5e-300, 2.25e10),
            ComplexScalar::new(3.0, -4.0),
            ComplexScalar::new(1.0 / 3.0, 1.0 / 7.0),
        ] {
            assert_eq!(parse_complex(&format_complex(z)), Ok(z));
        }
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        let k = |e| CliError::Kernel(e).exit_code();
        assert_eq!(k(QError::Domain("x".into())), 3);
        assert_eq!(k(QError::Pole("x".into())), 3);
        assert_eq!(k(QError::BudgetExceeded { what: "x".into(), limit: 1 }), 4);
        assert_eq!(k(QError::Divergence("x".into())), 4);
        assert_eq!(k(QError::UnknownIdentity("x".into())), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
