//! Command-line front end for `schubert-core`.
//!
//! [`run`] parses arguments, dispatches, and returns the rendered output
//! together with the process exit code, so the binary is a thin wrapper.

pub mod json;

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use schubert_core::verify::{run_suite, Suite, DEFAULT_MAX_RANK};
use schubert_core::{
    enumerate_group, monk_recursion_coefficient, monk_recursion_expand, pieri_coefficient,
    pieri_expand, solve_expand, Permutation, Polynomial, SchubertExpansion,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or parameters.
    #[error("{0}")]
    Usage(String),
    /// The oracles disagree or a verification suite failed. Carries
    /// whatever was rendered before the failure was detected.
    #[error("{message}")]
    Failure { message: String, output: String },
}

impl From<schubert_core::Error> for CliError {
    fn from(e: schubert_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure { .. } => EXIT_FAILURE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "schubert",
    version,
    about = "Equivariant Pieri products on the flag manifold"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand ξ^{c[k,m]} ξ^w in the Schubert basis.
    Product(ProductArgs),
    /// A single coefficient of ξ^u in ξ^{c[k,m]} ξ^w.
    Coeff(CoeffArgs),
    /// ξ^{c[k,m]} ξ^w for every w in S_n.
    Table(TableArgs),
    /// Run verification suites over S_n.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Pieri,
    Recursion,
    Solve,
    All,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[command(flatten)]
    pub common: Common,
    /// One-line ("[2,1,3]") or word ("s1 s2") form; empty means identity.
    #[arg(long, default_value = "")]
    pub w: String,
    #[arg(long, value_enum, default_value_t = Oracle::Pieri)]
    pub oracle: Oracle,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "")]
    pub w: String,
    #[arg(long)]
    pub u: String,
    #[arg(long, value_enum, default_value_t = Oracle::Pieri)]
    pub oracle: Oracle,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Oracle::Pieri)]
    pub oracle: Oracle,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    /// A suite name or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Largest accepted n; the sweeps grow like (n!)^2.
    #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
    pub max_n: usize,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code and the text destined for stdout and stderr.
pub fn run<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => (EXIT_OK, out, String::new()),
        Err(e) => {
            let code = e.exit_code();
            let out = match &e {
                CliError::Failure { output, .. } => output.clone(),
                CliError::Usage(_) => String::new(),
            };
            (code, out, format!("error: {e}\n"))
        }
    }
}

pub fn dispatch(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Product(a) => cmd_product(a),
        Command::Coeff(a) => cmd_coeff(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn validate(c: &Common) -> Result<(), CliError> {
    if c.n < 2 {
        return Err(CliError::Usage(format!(
            "--n must be at least 2, got {}",
            c.n
        )));
    }
    if c.n > u8::MAX as usize {
        return Err(CliError::Usage(format!(
            "--n must be at most {}, got {}",
            u8::MAX,
            c.n
        )));
    }
    if !(1 <= c.m && c.m <= c.k && c.k < c.n) {
        return Err(CliError::Usage(format!(
            "need 1 <= m <= k <= n-1, got n={} k={} m={}",
            c.n, c.k, c.m
        )));
    }
    Ok(())
}

fn parse_perm(flag: &str, text: &str, n: usize) -> Result<Permutation, CliError> {
    Permutation::parse(text, n).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

/// The product by the chosen route. `All` runs the three and requires
/// them to agree exactly.
pub fn expand(
    k: usize,
    m: usize,
    w: &Permutation,
    oracle: Oracle,
) -> Result<SchubertExpansion, CliError> {
    Ok(match oracle {
        Oracle::Pieri => pieri_expand(k, m, w)?,
        Oracle::Recursion => monk_recursion_expand(k, m, w)?,
        Oracle::Solve => solve_expand(k, m, w)?,
        Oracle::All => {
            let closed = pieri_expand(k, m, w)?;
            let recursion = monk_recursion_expand(k, m, w)?;
            let solve = solve_expand(k, m, w)?;
            for (name, other) in [("recursion", &recursion), ("solve", &solve)] {
                if other != &closed {
                    return Err(CliError::Failure {
                        message: format!(
                            "k={k} m={m} w={w}: closed rule and {name} disagree\n{}",
                            diff(&closed, other)
                        ),
                        output: String::new(),
                    });
                }
            }
            closed
        }
    })
}

fn diff(a: &SchubertExpansion, b: &SchubertExpansion) -> String {
    let mut keys: Vec<&Permutation> = a
        .iter()
        .map(|(u, _)| u)
        .chain(b.iter().map(|(u, _)| u))
        .collect();
    keys.sort_by(|x, y| x.canonical_cmp(y));
    keys.dedup();
    let mut out = String::new();
    for u in keys {
        let (x, y) = (a.coefficient(u), b.coefficient(u));
        if x != y {
            let _ = writeln!(out, "  u={} : {x} vs {y}", json::word(u));
        }
    }
    out
}

fn render_text(e: &SchubertExpansion, indent: &str, out: &mut String) {
    for (u, p) in e.iter() {
        let _ = writeln!(out, "{indent}u={} : {p}", json::word(u));
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn cmd_product(a: &ProductArgs) -> Result<String, CliError> {
    let c = &a.common;
    validate(c)?;
    let w = parse_perm("w", &a.w, c.n)?;
    let e = expand(c.k, c.m, &w, a.oracle)?;
    Ok(match c.format {
        Format::Text => {
            let mut out = String::new();
            render_text(&e, "", &mut out);
            out
        }
        Format::Json => to_json(&json::expansion_doc(c.k, c.m, &w, &e)?),
    })
}

pub fn cmd_coeff(a: &CoeffArgs) -> Result<String, CliError> {
    let c = &a.common;
    validate(c)?;
    let w = parse_perm("w", &a.w, c.n)?;
    let u = parse_perm("u", &a.u, c.n)?;
    let p: Polynomial = match a.oracle {
        Oracle::Pieri => pieri_coefficient(c.k, c.m, &w, &u)?,
        Oracle::Recursion => monk_recursion_coefficient(c.k, c.m, &w, &u)?,
        Oracle::Solve | Oracle::All => expand(c.k, c.m, &w, a.oracle)?.coefficient(&u),
    };
    Ok(match c.format {
        Format::Text => format!("{p}\n"),
        Format::Json => to_json(&json::CoefficientDoc {
            n: c.n,
            c: [c.k, c.m],
            w: json::word(&w),
            u: json::word(&u),
            coeff: json::polynomial_doc(&p),
            trace: json::trace_doc(c.k, c.m, &w, &u)?,
        }),
    })
}

pub fn cmd_table(a: &TableArgs) -> Result<String, CliError> {
    let c = &a.common;
    validate(c)?;
    let group = enumerate_group(c.n);
    match c.format {
        Format::Text => {
            let mut out = String::new();
            for w in &group {
                let e = expand(c.k, c.m, w, a.oracle).map_err(|err| with_output(err, &out))?;
                let _ = writeln!(out, "w={}", json::word(w));
                render_text(&e, "  ", &mut out);
            }
            Ok(out)
        }
        Format::Json => {
            let mut docs = Vec::with_capacity(group.len());
            for w in &group {
                docs.push(json::expansion_doc(
                    c.k,
                    c.m,
                    w,
                    &expand(c.k, c.m, w, a.oracle)?,
                )?);
            }
            Ok(to_json(&docs))
        }
    }
}

fn with_output(err: CliError, rendered: &str) -> CliError {
    match err {
        CliError::Failure { message, .. } => CliError::Failure {
            message,
            output: rendered.to_string(),
        },
        other => other,
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<String, CliError> {
    if a.n < 2 || a.n > a.max_n {
        return Err(CliError::Usage(format!(
            "--n must satisfy 2 <= n <= {}, got {}",
            a.max_n, a.n
        )));
    }
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_str(&a.suite)?]
    };
    let mut out = String::new();
    let mut failed = Vec::new();
    for suite in suites {
        let report = run_suite(suite, a.n)?;
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{suite} n={}: {status} ({} checks, {} failures)",
            a.n,
            report.checks,
            report.failures.len()
        );
        for f in &report.failures {
            let _ = writeln!(out, "  {f}");
        }
        if !report.passed() {
            failed.push(suite.name());
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Failure {
            message: format!("failing suites: {}", failed.join(", ")),
            output: out,
        })
    }
}
