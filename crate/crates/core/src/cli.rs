//! The `twosided` command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 singular matrix,
//! 3 `AB ≠ I` (or a one-sided inverse that is not two-sided), 4 rejected
//! certificate, 101 internal contradiction (a bug).
//!
//! Machine-readable output goes to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::certify::{
    left_inverse, prove_two_sided, rank, solve_homogeneous, verify_certificate_detailed, Certificate,
    Inversion, Verdict,
};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::oracle::{exhaustive_dedekind_check_parallel, random_dedekind_check, ExhaustReport};
use crate::shift::dedekind_counterexample_report;
use crate::text::{parse_matrix, write_matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_NOT_LEFT_INVERSE: i32 = 3;
pub const EXIT_BAD_CERTIFICATE: i32 = 4;
pub const EXIT_INTERNAL: i32 = 101;

#[derive(Parser, Debug)]
#[command(name = "twosided", version, about = "Certify that AB = I implies BA = I over exact fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    s.parse()
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invert a square matrix, or print a kernel witness if it is singular.
    Invert {
        matrix: PathBuf,
        /// Write the inverse here instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Read entries in this field instead of the file's.
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
    /// Prove BA = I from AB = I and optionally write the certificate.
    Certify {
        /// Matrix file for A.
        #[arg(long)]
        left: PathBuf,
        /// Matrix file for B.
        #[arg(long)]
        right: PathBuf,
        /// Write the certificate JSON here.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
    /// Replay a certificate against a pair of matrices.
    Verify {
        /// Certificate JSON written by `certify --emit`.
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
    /// Print a kernel basis, one vector per line.
    Solve {
        matrix: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
    /// Print the rank.
    Rank {
        matrix: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
    /// Check every n×n matrix over GF(p).
    Exhaust {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        /// Worker threads; the report does not depend on it.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
    },
    /// Check seeded random invertible matrices.
    RandomCheck {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long)]
        n: usize,
        /// Number of invertible matrices to check.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Show that shift operators give BA = 1 but AB ≠ 1.
    ShiftDemo {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        /// Check basis vectors e_1 through e_max_index.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_index: u64,
    },
}

/// A failed run: exit code plus a message for stderr.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn describe(path: &Path, err: Error) -> Failure {
    match err {
        Error::Parse { line, column, message } => {
            usage(format!("{}:{line}:{column}: {message}", path.display()))
        }
        Error::InternalContradiction(msg) => Failure(EXIT_INTERNAL, format!("internal contradiction: {msg}")),
        other => usage(format!("{}: {other}", path.display())),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path, field: Option<FieldSpec>) -> Result<Matrix, Failure> {
    parse_matrix(&read(path)?, field).map_err(|e| describe(path, e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("writing output: {e}")))
}

fn other_error(err: Error) -> Failure {
    match err {
        Error::InternalContradiction(msg) => Failure(EXIT_INTERNAL, format!("internal contradiction: {msg}")),
        other => usage(other.to_string()),
    }
}

#[derive(Serialize)]
struct SingularOutput {
    singular: bool,
    witness: Vec<String>,
}

fn report_exit(report: &ExhaustReport) -> i32 {
    if report.violations > 0 {
        EXIT_NOT_LEFT_INVERSE
    } else if report.cert_failures > 0 {
        EXIT_BAD_CERTIFICATE
    } else {
        EXIT_OK
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Invert { matrix, output, field } => {
            let a = load_matrix(&matrix, field)?;
            match left_inverse(&a).map_err(|e| describe(&matrix, e))? {
                Inversion::Inverse(b) => {
                    let text = write_matrix(&b);
                    match output {
                        Some(path) => write_file(&path, &text)?,
                        None => emit(out, &text)?,
                    }
                    Ok(EXIT_OK)
                }
                Inversion::Singular(report) => {
                    let json = serde_json::to_string(&SingularOutput {
                        singular: true,
                        witness: report.witness.entries().iter().map(ToString::to_string).collect(),
                    })
                    .expect("serializes");
                    emit(out, &format!("{json}\n"))?;
                    Ok(EXIT_SINGULAR)
                }
            }
        }
        Command::Certify { left, right, emit: emit_path, field } => {
            let a = load_matrix(&left, field)?;
            let b = load_matrix(&right, field)?;
            match prove_two_sided(&a, &b) {
                Ok(cert) => {
                    if let Some(path) = emit_path {
                        write_file(&path, &cert.to_json())?;
                    }
                    emit(out, "BA=I confirmed\n")?;
                    Ok(EXIT_OK)
                }
                Err(e @ Error::NotLeftInverse { .. }) => Err(Failure(EXIT_NOT_LEFT_INVERSE, e.to_string())),
                Err(e) => Err(other_error(e)),
            }
        }
        Command::Verify { cert, left, right, field } => {
            let a = load_matrix(&left, field)?;
            let b = load_matrix(&right, field)?;
            let certificate = Certificate::from_json(&read(&cert)?).map_err(|e| match e {
                Error::MalformedCertificate(_) => Failure(EXIT_BAD_CERTIFICATE, format!("{}: {e}", cert.display())),
                other => describe(&cert, other),
            })?;
            match verify_certificate_detailed(&certificate, &a, &b) {
                Ok(Verdict::Valid) => {
                    emit(out, "certificate valid\n")?;
                    Ok(EXIT_OK)
                }
                Ok(Verdict::Rejected { level, reason }) => {
                    let at = level.map_or(String::new(), |l| format!(" at level {l}"));
                    Err(Failure(EXIT_BAD_CERTIFICATE, format!("certificate rejected{at}: {reason}")))
                }
                Err(e) => Err(Failure(EXIT_BAD_CERTIFICATE, e.to_string())),
            }
        }
        Command::Solve { matrix, field } => {
            let a = load_matrix(&matrix, field)?;
            let text: String = solve_homogeneous(&a).iter().map(|v| format!("{v}\n")).collect();
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Rank { matrix, field } => {
            let a = load_matrix(&matrix, field)?;
            emit(out, &format!("{}\n", rank(&a)))?;
            Ok(EXIT_OK)
        }
        Command::Exhaust { field, n, jobs } => {
            let report = exhaustive_dedekind_check_parallel(field, n, jobs as usize).map_err(other_error)?;
            emit(out, &format!("{}\n", report.to_json()))?;
            Ok(report_exit(&report))
        }
        Command::RandomCheck { field, n, trials, seed } => {
            let report = random_dedekind_check(field, n, trials, seed).map_err(other_error)?;
            emit(out, &format!("{}\n", report.to_json()))?;
            Ok(report_exit(&report))
        }
        Command::ShiftDemo { field, max_index } => {
            let report = dedekind_counterexample_report(field, max_index).map_err(other_error)?;
            emit(out, &format!("{}\n", report.to_json()))?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_NOT_LEFT_INVERSE })
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if informational { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
