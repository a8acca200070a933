//! Command-line front end.
//!
//! Exit codes are part of the contract: `0` success, `1` a verified
//! identity or check failed, `2` invalid input, `3` the `--max-n` cap was
//! exceeded. Output is canonical, so it is byte-identical for every
//! `--jobs` setting.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cells::{
    descent_characterization_check, fixed_points, full_variety_fixed_points,
    per_k_closed_form_check, poincare_full_variety_with_jobs, poincare_sum_with_jobs, CellRecord,
};
use crate::error::{Error, Result};
use crate::nilfix::{
    fixed_quadric_space, infinitesimal_fixed_condition, regular_nilpotent, regularity_classifier,
    RationalMatrix,
};
use crate::parabolic::{all_subsets, enumerate_special, SimpleSubset};
use crate::qpoly::{euler_closed_form, height_identity_check, product_formula, QPolynomial};

/// Environment variable consulted for the default `--format`.
pub const FORMAT_ENV: &str = "QUADRICS_FORMAT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Product,
    Cells,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Km,
    Descent,
    ClosedForm,
    Duality,
    Euler,
    Height,
    Regularity,
    FixedQuadrics,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Km => "km",
            Check::Descent => "descent",
            Check::ClosedForm => "closed-form",
            Check::Duality => "duality",
            Check::Euler => "euler",
            Check::Height => "height",
            Check::Regularity => "regularity",
            Check::FixedQuadrics => "fixed-quadrics",
        }
    }

    /// Checks that walk all of `S_n` and are therefore subject to the cap.
    fn enumerates_group(self) -> bool {
        matches!(
            self,
            Check::Km | Check::Descent | Check::ClosedForm | Check::Duality | Check::Euler
        )
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "quadrics",
    version,
    about = "Poincaré polynomials and cells of regular subvarieties of complete quadrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, env = FORMAT_ENV, value_enum, default_value = "text")]
    pub format: Format,

    /// Largest n for which S_n may be enumerated.
    #[arg(long, global = true, default_value_t = 9)]
    pub max_n: usize,

    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Write the report to PATH instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincaré polynomial of X^I (or of the full variety when --subset is omitted).
    Poincare {
        #[arg(long)]
        n: usize,
        /// Comma-separated 1-based indices, or `none` for the empty subset.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Run identity checks over every special subset (or the given one).
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "km")]
        checks: Vec<Check>,
    },
    /// List torus fixed points with their cell dimensions.
    Cells {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        subset: Option<String>,
    },
    /// List or count the special subsets of [n-1].
    Special {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Fixed symmetric forms of a regular nilpotent block.
    FixedQuadrics {
        #[arg(long)]
        block: usize,
    },
}

/// Resolved settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub subset: Option<SimpleSubset>,
    pub method: Option<Method>,
    pub format: Format,
    pub max_n: usize,
    pub jobs: usize,
    pub checks: Vec<Check>,
}

impl RunConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            subset: None,
            method: None,
            format: Format::Text,
            max_n: 9,
            jobs: 1,
            checks: vec![Check::Km],
        }
    }

    fn require_cap(&self) -> Result<()> {
        if self.n > self.max_n {
            return Err(Error::CapExceeded {
                n: self.n,
                max: self.max_n,
            });
        }
        Ok(())
    }
}

/// Parses `--subset`: `none` (or empty) is `∅`, otherwise comma-separated
/// 1-based indices in `[n-1]`.
pub fn parse_subset(n: usize, raw: &str) -> Result<SimpleSubset> {
    let raw = raw.trim();
    if raw.is_empty() || raw.eq_ignore_ascii_case("none") {
        return Ok(SimpleSubset::empty(n));
    }
    let members = raw
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad subset member {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SimpleSubset::new(n, members)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    CapExceeded = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }

    fn of_error(err: &Error) -> Self {
        match err {
            Error::CapExceeded { .. } => ExitStatus::CapExceeded,
            Error::InexactDivision => ExitStatus::CheckFailed,
            _ => ExitStatus::InvalidInput,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub status: ExitStatus,
}

impl Report {
    fn ok(body: String) -> Self {
        Self {
            body,
            status: ExitStatus::Success,
        }
    }

    fn verdict(body: String, pass: bool) -> Self {
        Self {
            body,
            status: if pass {
                ExitStatus::Success
            } else {
                ExitStatus::CheckFailed
            },
        }
    }
}

/// What a process run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                ExitStatus::InvalidInput.code()
            } else {
                0
            };
            let text = err.render().to_string();
            return if err.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    let out = cli.out.clone();
    match dispatch(cli) {
        Ok(report) => match out {
            Some(path) => match std::fs::write(&path, &report.body) {
                Ok(()) => Outcome {
                    stdout: String::new(),
                    stderr: String::new(),
                    code: report.status.code(),
                },
                Err(e) => Outcome {
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    code: ExitStatus::InvalidInput.code(),
                },
            },
            None => Outcome {
                stdout: report.body,
                stderr: String::new(),
                code: report.status.code(),
            },
        },
        Err(err) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: ExitStatus::of_error(&err).code(),
        },
    }
}

/// Resolves a parsed command line into a config and runs it.
pub fn dispatch(cli: Cli) -> Result<Report> {
    let base = |n: usize| RunConfig {
        format: cli.format,
        max_n: cli.max_n,
        jobs: cli.jobs.max(1),
        ..RunConfig::new(n)
    };
    let subset_of =
        |n: usize, raw: &Option<String>| raw.as_deref().map(|s| parse_subset(n, s)).transpose();
    match &cli.command {
        Command::Poincare { n, subset, method } => {
            let config = RunConfig {
                subset: subset_of(*n, subset)?,
                method: *method,
                ..base(*n)
            };
            cmd_poincare(&config)
        }
        Command::Verify { n, subset, checks } => {
            let config = RunConfig {
                subset: subset_of(*n, subset)?,
                checks: checks.clone(),
                ..base(*n)
            };
            cmd_verify(&config)
        }
        Command::Cells { n, subset } => {
            let config = RunConfig {
                subset: subset_of(*n, subset)?,
                ..base(*n)
            };
            cmd_cells(&config)
        }
        Command::Special { n, count } => cmd_special(&base(*n), *count),
        Command::FixedQuadrics { block } => cmd_fixed_quadrics(&base(*block)),
    }
}

fn members_json(s: &SimpleSubset) -> Value {
    json!(s.members())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Product => "product",
        Method::Cells => "cells",
        Method::Both => "both",
    }
}

fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialise");
    s.push('\n');
    s
}

/// Poincaré polynomial by the requested method(s).
pub fn cmd_poincare(config: &RunConfig) -> Result<Report> {
    let n = config.n;
    let (target, method) = match &config.subset {
        None => {
            let method = config.method.unwrap_or(Method::Cells);
            if method != Method::Cells {
                return Err(Error::InvalidInput(
                    "the full variety is only available with --method cells; pass --subset for X^I"
                        .into(),
                ));
            }
            (SimpleSubset::full(n), method)
        }
        Some(i) => {
            i.ensure_special()?;
            (i.clone(), config.method.unwrap_or(Method::Both))
        }
    };
    if method != Method::Product {
        config.require_cap()?;
    }
    let full = config.subset.is_none();
    let product = match method {
        Method::Product | Method::Both => Some(product_formula(&target)?),
        Method::Cells => None,
    };
    let cells = match (method, full) {
        (Method::Product, _) => None,
        (_, true) => Some(poincare_full_variety_with_jobs(n, config.jobs)?),
        (_, false) => Some(poincare_sum_with_jobs(&target, config.jobs)?),
    };
    let agree = match (&product, &cells) {
        (Some(p), Some(c)) => p == c,
        _ => true,
    };
    let main: &QPolynomial = cells
        .as_ref()
        .or(product.as_ref())
        .expect("at least one method runs");
    let verdict = if agree { "OK" } else { "MISMATCH" };
    let label = if full {
        format!("X_{n}")
    } else {
        format!("X^I, I = {target}")
    };

    let body = match config.format {
        Format::Text => {
            let mut s = format!("n = {n}, {label}\n");
            if let Some(p) = &product {
                let _ = writeln!(s, "product: {p}");
            }
            if let Some(c) = &cells {
                let _ = writeln!(s, "cells:   {c}");
            }
            let _ = writeln!(s, "degree:  {}", main.degree().unwrap_or(0));
            let _ = writeln!(s, "euler:   {}", main.evaluate_at_one());
            let _ = writeln!(s, "verdict: {verdict}");
            s
        }
        Format::Json => render_json(&json!({
            "n": n,
            "subset": members_json(&target),
            "method": method_name(method),
            "coeffs": main.to_decimal_strings(),
            "degree": main.degree().unwrap_or(0),
            "euler": main.evaluate_at_one().to_string(),
            "verdict": verdict,
        })),
        Format::Csv => {
            let mut s = String::from("method,k,coeff\n");
            for (name, poly) in [("product", &product), ("cells", &cells)] {
                if let Some(p) = poly {
                    for (k, c) in p.coeffs().iter().enumerate() {
                        let _ = writeln!(s, "{name},{k},{c}");
                    }
                }
            }
            s
        }
    };
    Ok(Report::verdict(body, agree))
}

struct CheckResult {
    check: Check,
    label: String,
    pass: bool,
}

fn check_for_subset(check: Check, i: &SimpleSubset, jobs: usize) -> Result<bool> {
    let n = i.n();
    Ok(match check {
        Check::Km => poincare_sum_with_jobs(i, jobs)? == product_formula(i)?,
        Check::Descent => {
            let mut ok = true;
            for k in i.subsets() {
                ok &= descent_characterization_check(&k, i)?;
            }
            ok
        }
        Check::ClosedForm => {
            let mut ok = true;
            for k in i.subsets() {
                ok &= per_k_closed_form_check(&k, i)?;
            }
            ok
        }
        Check::Duality => {
            let p = poincare_sum_with_jobs(i, jobs)?;
            p.is_palindromic() && p.degree() == Some(n * (n - 1) / 2 + i.len())
        }
        Check::Euler => {
            let p = poincare_sum_with_jobs(i, jobs)?;
            let closed = euler_closed_form(i)?;
            p.evaluate_at_one() == closed && closed == fixed_points(i)?.len().into()
        }
        Check::Height | Check::Regularity | Check::FixedQuadrics => unreachable!("not per-subset"),
    })
}

fn fixed_quadric_block_ok(m: usize) -> Result<bool> {
    let space = fixed_quadric_space(m);
    let e = regular_nilpotent(m);
    let mut ok = space.dimension == space.basis.len() && !space.basis.is_empty();
    for b in &space.basis {
        ok &= b.is_symmetric() && infinitesimal_fixed_condition(&e, b)?.is_zero();
    }
    match m {
        2 => {
            let degenerate = RationalMatrix::from_integers(&[vec![0, 0], vec![0, 1]])?;
            ok &= !space.has_nondegenerate && space.basis == vec![degenerate];
        }
        3 => ok &= space.has_nondegenerate && space.dimension == 2,
        _ => {}
    }
    Ok(ok)
}

/// Runs the requested checks and reports one line per (check, subject).
pub fn cmd_verify(config: &RunConfig) -> Result<Report> {
    let n = config.n;
    if config.checks.iter().any(|c| c.enumerates_group()) {
        config.require_cap()?;
    }
    let special_targets = match &config.subset {
        Some(i) => vec![i.clone()],
        None => enumerate_special(n),
    };
    let mut results = Vec::new();
    for &check in &config.checks {
        match check {
            Check::Height => results.push(CheckResult {
                check,
                label: format!("n={n}"),
                pass: height_identity_check(n),
            }),
            Check::Regularity => {
                let subjects = match &config.subset {
                    Some(i) => vec![i.clone()],
                    None => all_subsets(n),
                };
                for i in subjects {
                    let pass = regularity_classifier(&i).is_regular() == i.is_special();
                    results.push(CheckResult {
                        check,
                        label: i.to_string(),
                        pass,
                    });
                }
            }
            Check::FixedQuadrics => {
                for m in 1..=n.max(1) {
                    results.push(CheckResult {
                        check,
                        label: format!("block={m}"),
                        pass: fixed_quadric_block_ok(m)?,
                    });
                }
            }
            _ => {
                for i in &special_targets {
                    i.ensure_special()?;
                    let pass = check_for_subset(check, i, config.jobs)?;
                    results.push(CheckResult {
                        check,
                        label: i.to_string(),
                        pass,
                    });
                }
            }
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    let all = passed == results.len();
    let body = match config.format {
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let _ = writeln!(
                    s,
                    "{} {} {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check.name(),
                    r.label
                );
            }
            let _ = writeln!(s, "{passed}/{} passed", results.len());
            s
        }
        Format::Json => render_json(&json!({
            "n": n,
            "results": results
                .iter()
                .map(|r| json!({"check": r.check.name(), "subject": r.label, "pass": r.pass}))
                .collect::<Vec<_>>(),
            "passed": passed,
            "total": results.len(),
            "verdict": if all { "OK" } else { "FAIL" },
        })),
        Format::Csv => {
            let mut s = String::from("check,subject,pass\n");
            for r in &results {
                let _ = writeln!(s, "{},\"{}\",{}", r.check.name(), r.label, r.pass);
            }
            s
        }
    };
    Ok(Report::verdict(body, all))
}

/// Fixed-point listing in canonical `(K, w)` order.
pub fn cmd_cells(config: &RunConfig) -> Result<Report> {
    config.require_cap()?;
    let records: Vec<CellRecord> = match &config.subset {
        Some(i) => fixed_points(i)?,
        None => full_variety_fixed_points(config.n)?,
    };
    let opt = |d: Option<usize>| d.map(|x| x.to_string()).unwrap_or_default();
    let body = match config.format {
        Format::Csv => {
            let mut s = String::from("K,w,R,dim_X,dim_XI\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.k.joined(";"),
                    r.w.compact(),
                    r.r_set.joined(";"),
                    r.dim_in_x,
                    opt(r.dim_in_xi)
                );
            }
            s
        }
        Format::Json => render_json(&json!(records
            .iter()
            .map(|r| json!({
                "K": members_json(&r.k),
                "w": r.w.images(),
                "R": members_json(&r.r_set),
                "dim_X": r.dim_in_x,
                "dim_XI": r.dim_in_xi,
            }))
            .collect::<Vec<_>>())),
        Format::Text => {
            let mut s = format!(
                "{:<10} {:<12} {:<10} {:>5} {:>6}\n",
                "K", "w", "R", "dim_X", "dim_XI"
            );
            for r in &records {
                let _ = writeln!(
                    s,
                    "{:<10} {:<12} {:<10} {:>5} {:>6}",
                    r.k.to_string(),
                    r.w.compact(),
                    r.r_set.to_string(),
                    r.dim_in_x,
                    opt(r.dim_in_xi)
                );
            }
            let _ = writeln!(s, "{} fixed points", records.len());
            s
        }
    };
    Ok(Report::ok(body))
}

/// Special subsets of `[n-1]`; `count_only` suppresses the listing.
pub fn cmd_special(config: &RunConfig, count_only: bool) -> Result<Report> {
    let subsets = enumerate_special(config.n);
    let body = match config.format {
        Format::Text if count_only => format!("{}\n", subsets.len()),
        Format::Text => subsets.iter().map(|s| format!("{s}\n")).collect(),
        Format::Json if count_only => render_json(&json!({"n": config.n, "count": subsets.len()})),
        Format::Json => render_json(&json!({
            "n": config.n,
            "count": subsets.len(),
            "subsets": subsets.iter().map(members_json).collect::<Vec<_>>(),
        })),
        Format::Csv if count_only => format!("n,count\n{},{}\n", config.n, subsets.len()),
        Format::Csv => {
            let mut s = String::from("subset\n");
            for i in &subsets {
                let _ = writeln!(s, "{}", i.joined(";"));
            }
            s
        }
    };
    Ok(Report::ok(body))
}

/// Basis and nondegeneracy verdict for the block size stored in `config.n`.
pub fn cmd_fixed_quadrics(config: &RunConfig) -> Result<Report> {
    let m = config.n;
    if m == 0 {
        return Err(Error::InvalidInput("--block must be at least 1".into()));
    }
    let space = fixed_quadric_space(m);
    let yes_no = if space.has_nondegenerate { "yes" } else { "no" };
    let body = match config.format {
        Format::Text => {
            let mut s = format!("block {m}: dimension {}\nbasis:\n", space.dimension);
            for b in &space.basis {
                let _ = writeln!(s, "  {b}");
            }
            let _ = writeln!(s, "nondegenerate: {yes_no}");
            s
        }
        Format::Json => render_json(&json!({
            "block": m,
            "dimension": space.dimension,
            "basis": space.basis.iter().map(|b| {
                (0..b.rows()).map(|r| (0..b.cols()).map(|c| b.get(r, c).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "nondegenerate": space.has_nondegenerate,
        })),
        Format::Csv => {
            let mut s = String::from("index,matrix\n");
            for (k, b) in space.basis.iter().enumerate() {
                let _ = writeln!(s, "{k},\"{b}\"");
            }
            s
        }
    };
    Ok(Report::ok(body))
}
