use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use rcfcert::certfmt::{certificate_to_json, parse_certificate, parse_point, point_to_json};
use rcfcert::{check_certificate, decide, isolate_roots, parse_formula, parse_poly, sign_at};

/// Exact decision procedure for univariate polynomial formulas over the reals.
///
/// Exit status: 0 = true / accepted, 1 = false / rejected, 2 = input error.
#[derive(Debug, Parser)]
#[command(name = "rcfcert", version)]
struct Cli {
    /// Print `sign` results as JSON (other commands always print JSON).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a formula and print its certificate and check report.
    Decide {
        formula: String,
        /// Also write the certificate as JSON to this file.
        #[arg(long, value_name = "PATH")]
        emit_cert: Option<PathBuf>,
    },
    /// Check a certificate (JSON or `[Arep …, Rat …]` list) for a formula.
    Check {
        formula: String,
        #[arg(long, value_name = "PATH")]
        cert: PathBuf,
    },
    /// Print the real roots of a polynomial as certificate points.
    Isolate { poly: String },
    /// Print the sign (-1, 0 or 1) of a polynomial at a point such as
    /// `Rat -3` or `Arep [:-2,0,1:] 0 2`.
    Sign { poly: String, point: String },
}

enum Outcome {
    Yes,
    No,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Writes a line to stdout. A closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn read_file(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    match cli.command {
        Command::Decide { formula, emit_cert } => {
            let f = parse_formula(&formula)?;
            let v = decide(&f)?;
            let cert = certificate_to_json(&v.certificate);
            if let Some(path) = emit_cert {
                let text = serde_json::to_string_pretty(&cert)? + "\n";
                fs::write(&path, text)
                    .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
            }
            print_json(&json!({
                "truth": v.truth,
                "certified": v.certified.to_string(),
                "certificate": cert,
                "checks": v.report,
            }));
            Ok(if v.truth { Outcome::Yes } else { Outcome::No })
        }
        Command::Check { formula, cert } => {
            let f = parse_formula(&formula)?;
            let c = parse_certificate(&read_file(&cert)?, f.quantifier)?;
            let report = check_certificate(&f, &c);
            print_json(&json!({ "passed": report.passed(), "checks": report }));
            Ok(if report.passed() {
                Outcome::Yes
            } else {
                Outcome::No
            })
        }
        Command::Isolate { poly } => {
            let p = parse_poly(&poly)?;
            let roots = isolate_roots(&p)?;
            print_json(&Value::Array(roots.iter().map(point_to_json).collect()));
            Ok(Outcome::Yes)
        }
        Command::Sign { poly, point } => {
            let p = parse_poly(&poly)?;
            let a = parse_point(&point)?;
            let s = sign_at(&p, &a)?;
            if cli.json {
                print_json(&json!({ "sign": s.to_i8() }));
            } else {
                emit(&s.to_string());
            }
            Ok(Outcome::Yes)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
