//! The `tridkit` command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 singular matrix,
//! 3 verification failure.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{run_bench, BenchOp, BenchRecord};
use crate::dense::DenseMatrix;
use crate::error::Error;
use crate::inverse::{hadamard_factors, invert};
use crate::io::{format_value, parse_tridiag, ParseError};
use crate::matrix::TridiagonalMatrix;
use crate::minors::{determinant, Tolerance};
use crate::scalar::{Rational, Scalar, ScalarMode, Scaled};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print the determinant
    Det,
    /// Print the inverse, or SINGULAR
    Inv,
    /// Print the Hadamard factors R and S of the inverse
    Factors,
    /// Cross-check every formula against the dense oracle
    Verify,
    /// Emit timing and flop counts as CSV
    Bench,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "tridkit",
    version,
    about = "Determinants and inverses of tridiagonal matrices"
)]
pub struct Cli {
    pub command: Command,

    /// Band-format input file; stdin when absent or `-`
    pub file: Option<PathBuf>,

    #[arg(
        long,
        value_enum,
        env = "TRIDKIT_MODE",
        default_value = "double",
        ignore_case = true
    )]
    pub mode: ScalarMode,

    /// Relative breakdown threshold for pivots (floating modes)
    #[arg(long, default_value_t = 0.0)]
    pub tol: f64,

    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,

    /// Matrix orders for `bench`
    #[arg(long, value_delimiter = ',', default_values_t = [256usize, 512, 1024])]
    pub sizes: Vec<usize>,

    /// Operations for `bench`
    #[arg(long, value_delimiter = ',', value_enum, default_values_t = BenchOp::ALL)]
    pub ops: Vec<BenchOp>,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Timed repetitions per bench record
    #[arg(long, default_value_t = 5)]
    pub reps: u32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "tridkit: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, String> {
    if cli.command == Command::Bench {
        return bench(cli, out).map_err(|e| e.to_string());
    }
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(format!(
            "--tol must be a finite nonnegative number, got {}",
            cli.tol
        ));
    }
    let text = read_input(cli, stdin)?;
    let source = cli
        .file
        .as_ref()
        .map_or("<stdin>".into(), |p| p.display().to_string());
    let parse_err = |e: ParseError| format!("{source}: {e}");
    let result = match cli.mode {
        ScalarMode::Double => dispatch(cli, &parse_tridiag::<f64>(&text).map_err(parse_err)?, out),
        ScalarMode::Rational => dispatch(
            cli,
            &parse_tridiag::<Rational>(&text).map_err(parse_err)?,
            out,
        ),
        ScalarMode::Scaled => dispatch(
            cli,
            &parse_tridiag::<Scaled>(&text).map_err(parse_err)?,
            out,
        ),
    };
    result.map_err(|e| e.to_string())
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<String, String> {
    match &cli.file {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        }
        _ => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| format!("<stdin>: {e}"))?;
            Ok(text)
        }
    }
}

fn dispatch<T: Scalar>(
    cli: &Cli,
    a: &TridiagonalMatrix<T>,
    out: &mut dyn Write,
) -> std::io::Result<i32> {
    let tol = Tolerance::with_breakdown(cli.tol);
    match cli.command {
        Command::Det => {
            let det = format_value(&determinant(a, tol));
            match cli.format {
                OutputFormat::Plain | OutputFormat::Csv => writeln!(out, "{det}")?,
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({ "mode": cli.mode.to_string(), "n": a.order(), "determinant": value_json(&det, cli.mode) })
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Inv => match invert(a, tol) {
            Ok(inv) => {
                match cli.format {
                    OutputFormat::Json => writeln!(
                        out,
                        "{}",
                        json!({
                            "mode": cli.mode.to_string(),
                            "n": a.order(),
                            "determinant": value_json(&format_value(&inv.delta), cli.mode),
                            "inverse": matrix_json(&inv.alpha, cli.mode),
                        })
                    )?,
                    fmt => write_matrix(out, &inv.alpha, fmt)?,
                }
                Ok(EXIT_OK)
            }
            Err(Error::Singular) => singular(out, cli.format),
            Err(e) => Err(std::io::Error::other(e)),
        },
        Command::Factors => match hadamard_factors(a, tol) {
            Ok(h) => {
                match cli.format {
                    OutputFormat::Json => writeln!(
                        out,
                        "{}",
                        json!({
                            "mode": cli.mode.to_string(),
                            "n": a.order(),
                            "R": matrix_json(&h.r, cli.mode),
                            "S": matrix_json(&h.s, cli.mode),
                        })
                    )?,
                    fmt => {
                        writeln!(out, "R")?;
                        write_matrix(out, &h.r, fmt)?;
                        writeln!(out, "S")?;
                        write_matrix(out, &h.s, fmt)?;
                    }
                }
                Ok(EXIT_OK)
            }
            Err(Error::Singular) => singular(out, cli.format),
            Err(e) => Err(std::io::Error::other(e)),
        },
        Command::Verify => {
            let report = verify(a, tol);
            match cli.format {
                OutputFormat::Json => {
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| {
                            let (status, detail) = match &c.outcome {
                                crate::verify::Outcome::Pass => ("pass", String::new()),
                                crate::verify::Outcome::Fail(d) => ("fail", d.clone()),
                                crate::verify::Outcome::Skip(d) => ("skip", d.clone()),
                            };
                            json!({ "check": c.name, "status": status, "detail": detail })
                        })
                        .collect();
                    writeln!(
                        out,
                        "{}",
                        json!({ "passed": report.passed(), "checks": checks })
                    )?;
                }
                _ => {
                    for check in &report.checks {
                        writeln!(out, "{check}")?;
                    }
                }
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Bench => unreachable!("handled before parsing input"),
    }
}

fn singular(out: &mut dyn Write, format: OutputFormat) -> std::io::Result<i32> {
    match format {
        OutputFormat::Json => writeln!(out, "{}", json!({ "singular": true }))?,
        _ => writeln!(out, "SINGULAR")?,
    }
    Ok(EXIT_SINGULAR)
}

fn write_matrix<T: Scalar>(
    out: &mut dyn Write,
    m: &DenseMatrix<T>,
    format: OutputFormat,
) -> std::io::Result<()> {
    let sep = if format == OutputFormat::Csv {
        ","
    } else {
        " "
    };
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(format_value).collect();
        writeln!(out, "{}", cells.join(sep))?;
    }
    Ok(())
}

/// Doubles become JSON numbers; exact and out-of-range values stay strings.
fn value_json(text: &str, mode: ScalarMode) -> Value {
    if mode == ScalarMode::Rational {
        return Value::String(text.to_owned());
    }
    text.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or_else(|| Value::String(text.to_owned()), Value::Number)
}

fn matrix_json<T: Scalar>(m: &DenseMatrix<T>, mode: ScalarMode) -> Value {
    Value::Array(
        m.rows()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| value_json(&format_value(x), mode))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn bench(cli: &Cli, out: &mut dyn Write) -> std::io::Result<i32> {
    if cli.sizes.contains(&0) {
        return Err(std::io::Error::other("bench sizes must be positive"));
    }
    let records = run_bench(&cli.sizes, &cli.ops, cli.seed, cli.reps.max(1));
    match cli.format {
        OutputFormat::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({ "n": r.n, "op": r.op.name(), "flops": r.flops, "nanos": r.nanos as u64, "reps": r.reps })
                })
                .collect();
            writeln!(out, "{}", Value::Array(rows))?;
        }
        _ => {
            writeln!(out, "{}", BenchRecord::CSV_HEADER)?;
            for r in &records {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
    }
    Ok(EXIT_OK)
}
