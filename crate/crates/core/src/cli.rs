//! Command-line surface. [`run`] is pure: it returns the exit code and the
//! text to print, so the binary stays a thin shell and tests need no process.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::check::{all_passed, render_table, Check};
use crate::fixtures::{catalog, render_catalog, sweep_grid};
use crate::formal::verify_lemmas;
use crate::report::{build_report, load_model, ReportError, Verdict};
use crate::scalar::parse_rational;
use crate::system::{verify_system, Tamper};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gauduchon", version, about = "Gauduchon connections on left-invariant Hermitian structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Threshold below which residuals count as zero.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model file: parse, then d², Jacobi, J², Nijenhuis, metric compatibility.
    Validate {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Per-s curvature residuals, Ricci norms and a rigidity verdict.
    Report {
        path: PathBuf,
        /// Comma-separated rationals, e.g. `0,1/2,2/3`; defaults to the 12-point sweep grid.
        #[arg(long = "s", value_delimiter = ',', value_parser = parse_s)]
        s: Vec<BigRational>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact identity checks on random locally conformally Kähler torsion.
    VerifyLemmas {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=4))]
        n: u32,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        draws: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true, value_parser = parse_tamper)]
        tamper: Option<Tamper>,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficient identities, determinant, singular set and reduced ranks.
    VerifySystem {
        #[arg(long, hide = true, value_parser = parse_tamper)]
        tamper: Option<Tamper>,
        #[command(flatten)]
        common: Common,
    },
    /// Bundled fixtures with their headline invariants, recomputed.
    Catalog {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_s(text: &str) -> Result<BigRational, String> {
    parse_rational(text).ok_or_else(|| format!("{text:?} is not a rational number"))
}

fn parse_tamper(text: &str) -> Result<Tamper, String> {
    Tamper::parse(text).ok_or_else(|| format!("{text:?}: expected a, b, c or entry:R,C"))
}

/// Exit code plus the text destined for stdout and stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckRun<'a> {
    command: &'a str,
    passed: bool,
    checks: &'a [Check],
}

fn check_outcome(command: &str, checks: &[Check], format: Format) -> Outcome {
    let passed = all_passed(checks);
    let code = if passed { EXIT_OK } else { EXIT_VERIFICATION };
    let stdout = match format {
        Format::Text => render_table(checks),
        Format::Json => to_json(&CheckRun { command, passed, checks }),
    };
    Outcome::out(code, stdout)
}

fn load_error(e: ReportError) -> Outcome {
    let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_INPUT };
    Outcome::err(code, format!("error: {e}\n"))
}

#[derive(Serialize)]
struct Failure {
    check: String,
    message: String,
}

#[derive(Serialize)]
struct ValidateDoc {
    path: String,
    valid: bool,
    failures: Vec<Failure>,
}

fn validate(path: &std::path::Path, format: Format) -> Outcome {
    let failures: Vec<Failure> = match load_model(path) {
        Ok(_) => Vec::new(),
        Err(ReportError::Invalid(v)) => v.0.iter().map(|e| Failure { check: e.check_name().into(), message: e.to_string() }).collect(),
        Err(ReportError::Rejected(e)) => vec![Failure { check: e.check_name().into(), message: e.to_string() }],
        Err(e) => return load_error(e),
    };
    let valid = failures.is_empty();
    let code = if valid { EXIT_OK } else { EXIT_VALIDATION };
    let stdout = match format {
        Format::Json => to_json(&ValidateDoc { path: path.display().to_string(), valid, failures }),
        Format::Text if valid => format!("{}: valid\n", path.display()),
        Format::Text => {
            let mut s = format!("{}: {} check(s) failed\n", path.display(), failures.len());
            for f in &failures {
                s.push_str(&format!("  {:<14} {}\n", f.check, f.message));
            }
            s
        }
    };
    Outcome::out(code, stdout)
}

pub fn execute(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { path, common } => validate(&path, common.format),
        Command::Report { path, s, common } => {
            let loaded = match load_model(&path) {
                Ok(m) => m,
                Err(e) => return load_error(e),
            };
            let grid = if s.is_empty() { sweep_grid() } else { s };
            let doc = build_report(&loaded, &grid, common.tol);
            let code = if doc.verdict == Verdict::Violation { EXIT_VERIFICATION } else { EXIT_OK };
            let stdout = match common.format {
                Format::Text => doc.to_text(),
                Format::Json => doc.to_json() + "\n",
            };
            Outcome::out(code, stdout)
        }
        Command::VerifyLemmas { n, draws, seed, tamper, common } => {
            match verify_lemmas(n as usize, draws as usize, seed, &tamper.unwrap_or(Tamper::NONE)) {
                Ok(checks) => check_outcome("verify-lemmas", &checks, common.format),
                Err(e) => Outcome::err(EXIT_INPUT, format!("error: {e}\n")),
            }
        }
        Command::VerifySystem { tamper, common } => {
            check_outcome("verify-system", &verify_system(&tamper.unwrap_or(Tamper::NONE)), common.format)
        }
        Command::Catalog { common } => {
            let entries = catalog(common.tol);
            let code = if entries.iter().all(|e| e.verified()) { EXIT_OK } else { EXIT_VERIFICATION };
            let stdout = match common.format {
                Format::Text => render_catalog(&entries),
                Format::Json => to_json(&entries),
            };
            Outcome::out(code, stdout)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::err(EXIT_INPUT, text)
            } else {
                Outcome::out(EXIT_OK, text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_list_parses_rationals() {
        let cli = Cli::try_parse_from(["g", "report", "m.json", "--s", "0,2/3,-1"]).unwrap();
        match cli.command {
            Command::Report { s, .. } => assert_eq!(s.len(), 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn bad_arguments_exit_three() {
        assert_eq!(run(["g", "verify-lemmas", "--n", "5"]).code, EXIT_INPUT);
        assert_eq!(run(["g", "verify-lemmas", "--draws", "0"]).code, EXIT_INPUT);
        assert_eq!(run(["g", "report", "m.json", "--s", "x"]).code, EXIT_INPUT);
        assert_eq!(run(["g", "nope"]).code, EXIT_INPUT);
    }

    #[test]
    fn help_exits_zero() {
        let o = run(["g", "--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("verify-system"));
    }
}
