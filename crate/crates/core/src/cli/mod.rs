//! Command-line front end: expression syntax, canonical printing, JSON
//! output and the `qcb` subcommands.

mod format;
mod json;
mod parse;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::algebra::{GaussianRational, Observable, QCMonomial};
use crate::brackets::{bracket, jacobi_residual, leibniz_residual, BracketKind};
use crate::explorer::{self, Execution, Identity, ScanConfig, Sector, DEFAULT_MAX_DEGREE};

pub use format::format;
pub use json::{
    observable_from_json, observable_to_json, violations_from_json, violations_to_json, CoeffRecord,
    JsonError, JsonInt, OutputRecord, TermRecord, ViolationJson, SCHEMA_VERSION,
};
pub use parse::{parse, parse_expr, Expr, ParseError, Symbol, MAX_EXPONENT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qcb", version, about = "Exact brackets of mixed quantum-classical observables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct Evaluate {
    /// Print results with hbar replaced by this scalar, e.g. 1/2; exit codes still use the exact result
    #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
    hbar: Option<String>,
}

impl Evaluate {
    fn apply(&self, a: &Observable) -> Result<Observable, Failure> {
        let Some(text) = &self.hbar else {
            return Ok(a.clone());
        };
        let value = parse_arg("--hbar", text)?;
        let scalar = match value.terms().next() {
            None => Some(GaussianRational::zero()),
            Some((m, c)) if value.num_terms() == 1 && *m == QCMonomial::ONE => c.as_constant().cloned(),
            _ => None,
        };
        match scalar {
            Some(v) => Ok(a.substitute_hbar(&v)),
            None => Err(Failure::Usage(format!("--hbar expects a number, found {}", format(&value)))),
        }
    }
}

#[derive(Args, Debug)]
struct KindArg {
    /// Bracket: poisson, commutator, aleksandrov, normal (alias normal-order)
    #[arg(long)]
    kind: BracketKind,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical normal-ordered form of an expression
    Canon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        eval: Evaluate,
    },
    /// Evaluate the bracket (A, B)
    Bracket {
        #[command(flatten)]
        kind: KindArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        eval: Evaluate,
    },
    /// Jacobi residual ((A,B),C) + ((B,C),A) + ((C,A),B)
    Jacobi {
        #[command(flatten)]
        kind: KindArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        eval: Evaluate,
    },
    /// Leibniz residual (AB,C) - (A,C)B - A(B,C)
    Leibniz {
        #[command(flatten)]
        kind: KindArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        eval: Evaluate,
    },
    /// Random sweep of the sector-factorization axioms
    Axioms {
        #[command(flatten)]
        kind: KindArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive scan of monomial triples for identity violations
    Scan {
        /// Identity to check: jacobi, leibniz
        #[arg(long)]
        identity: Identity,
        #[command(flatten)]
        kind: KindArg,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        /// Restrict monomials to one sector: all, classical, quantum
        #[arg(long, default_value = "all")]
        sector: Sector,
        /// Include the unit monomial 1 in the enumeration
        #[arg(long)]
        include_zero: bool,
        /// Worker threads (1 = sequential)
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
    /// Output closed early, e.g. piped into `head`.
    BrokenPipe,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::InvalidSector { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::BrokenPipe;
        }
        Failure::Internal(e.to_string())
    }
}

fn parse_arg(name: &str, text: &str) -> Result<Observable, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("argument {name}: {e}")))
}

fn emit_observable(out: &mut dyn Write, a: &Observable, fmt: OutputFormat) -> std::io::Result<()> {
    match fmt {
        OutputFormat::Text => writeln!(out, "{}", format(a)),
        OutputFormat::Json => writeln!(out, "{}", observable_to_json(a)),
    }
}

fn identity_check(
    out: &mut dyn Write,
    identity: Identity,
    kind: BracketKind,
    residual: &Observable,
    eval: &Evaluate,
    fmt: OutputFormat,
) -> Result<i32, Failure> {
    emit_observable(out, &eval.apply(residual)?, fmt)?;
    let held = residual.is_zero();
    if fmt == OutputFormat::Text {
        if held {
            writeln!(out, "PASS: {identity} identity holds for the {kind} bracket")?;
        } else {
            writeln!(out, "FAIL: {identity} identity violated for the {kind} bracket")?;
        }
    }
    Ok(if held { EXIT_OK } else { EXIT_VIOLATED })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Canon { expr, common, eval } => {
            let a = parse_arg("EXPR", &expr)?;
            emit_observable(out, &eval.apply(&a)?, common.format)?;
            Ok(EXIT_OK)
        }
        Command::Bracket { kind, a, b, common, eval } => {
            let (a, b) = (parse_arg("A", &a)?, parse_arg("B", &b)?);
            emit_observable(out, &eval.apply(&bracket(kind.kind, &a, &b)?)?, common.format)?;
            Ok(EXIT_OK)
        }
        Command::Jacobi { kind, a, b, c, common, eval } => {
            let (a, b, c) = (parse_arg("A", &a)?, parse_arg("B", &b)?, parse_arg("C", &c)?);
            let report = jacobi_residual(kind.kind, &a, &b, &c)?;
            identity_check(out, Identity::Jacobi, kind.kind, &report.residual, &eval, common.format)
        }
        Command::Leibniz { kind, a, b, c, common, eval } => {
            let (a, b, c) = (parse_arg("A", &a)?, parse_arg("B", &b)?, parse_arg("C", &c)?);
            let report = leibniz_residual(kind.kind, &a, &b, &c)?;
            identity_check(out, Identity::Leibniz, kind.kind, &report.residual, &eval, common.format)
        }
        Command::Axioms { kind, samples, seed, common } => {
            let reports = explorer::axiom_sweep(kind.kind, samples, seed)?;
            match common.format {
                OutputFormat::Text => {
                    writeln!(out, "violations: {}", reports.len())?;
                    for r in &reports {
                        let inputs: Vec<String> = r.inputs.iter().map(format).collect();
                        writeln!(out, "({}) -> {}", inputs.join(", "), format(&r.residual))?;
                    }
                }
                OutputFormat::Json => {
                    let doc = serde_json::json!({
                        "schema": SCHEMA_VERSION,
                        "kind": kind.kind,
                        "samples": samples,
                        "seed": seed,
                        "violations": reports.iter().map(|r| serde_json::json!({
                            "inputs": r.inputs.iter().map(format).collect::<Vec<_>>(),
                            "residual": OutputRecord::from_observable(&r.residual),
                        })).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{doc}")?;
                }
            }
            Ok(if reports.is_empty() { EXIT_OK } else { EXIT_VIOLATED })
        }
        Command::Scan { identity, kind, max_degree, sector, include_zero, jobs, common } => {
            if jobs == Some(0) {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let config = ScanConfig::new(identity, kind.kind, max_degree)
                .with_sector(sector)
                .with_include_zero(include_zero);
            let records = explorer::scan_with(&config, Execution::with_jobs(jobs))?;
            match common.format {
                OutputFormat::Text => {
                    writeln!(
                        out,
                        "# scan identity={identity} kind={} max_degree={max_degree} sector={sector} include_one={include_zero}",
                        kind.kind
                    )?;
                    writeln!(out, "# monomial triples with unit coefficients; every bracket is bilinear, so these span all violations")?;
                    writeln!(out, "# violations: {}", records.len())?;
                    for r in &records {
                        let [a, b, c] = r.triple;
                        writeln!(out, "({a}, {b}, {c}) -> {}", format(&r.residual))?;
                    }
                }
                OutputFormat::Json => writeln!(out, "{}", violations_to_json(&records))?,
            }
            Ok(if records.is_empty() { EXIT_OK } else { EXIT_VIOLATED })
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::BrokenPipe) => EXIT_OK,
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_VIOLATED
        }
    }
}
