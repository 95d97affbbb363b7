//! Command-line front end. Every subcommand prints one JSON document (or a
//! CSV table for flat results) and maps outcomes to exit codes:
//! 0 success, 1 verification failure, 2 usage error or failed hypothesis.

mod commands;

use crate::error::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gzcoeff", version, about = "Class groups, Hecke characters, p-adic coefficient sums and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format (csv only for flat tables)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Complex,
    Padic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Combo,
    Recur,
    Jacobi,
}

/// (D, N, p, r, k, precision) of a heights context.
#[derive(Args, Debug, Clone)]
pub struct ContextArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub disc: i64,
    #[arg(long)]
    pub level: u64,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 30)]
    pub prec: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced forms, group structure and class norms
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Integral ideals of a given norm with their classes
    Ideals {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        norm: u64,
    },
    /// Coefficients r_{A,χ}(n), n ≤ bound, of one class slice of the theta series
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        class: usize,
        #[arg(long)]
        bound: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        p: Option<u64>,
        /// p-adic digits or decimal digits
        #[arg(long, default_value_t = 30)]
        prec: u32,
    },
    /// H_{m,k} coefficients, optionally checking one identity
    Hpoly {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// σ_A(n) as a p-adic number and as a combination of logarithms
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        class: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 20)]
        prec: u32,
    },
    /// Main identity residuals for every class and 1 ≤ m ≤ mmax
    BcCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        mmax: u64,
        /// Worker threads for independent (class, m) cells
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Fourier coefficient a_m (log_p weight), fast and direct paths
    Fourier {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Local-height coefficient sum
    Heightsum {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Height/Fourier relation residuals, verbatim and sign-flipped
    Crosscheck {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Smallest admissible (N, p)
    Params {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        /// Use this p
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        level_at_least: Option<u64>,
        /// Require a Z_p-valued character of infinity type (2, 0)
        #[arg(long)]
        padic_values: bool,
    },
}

/// What a subcommand produced.
pub struct Report {
    pub json: Value,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// false when a verification failed
    pub ok: bool,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_)
        | Error::InvalidDiscriminant(_)
        | Error::NotPrime(_)
        | Error::DiscriminantMismatch(..)
        | Error::Mode(_)
        | Error::NoRoot(_)
        | Error::Polynomial(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&report.json).expect("serialisable") + "\n"),
        Format::Csv => {
            let Some((head, rows)) = &report.table else {
                return Err("csv output is only available for flat tables; use --format json".into());
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(head).map_err(|e| e.to_string())?;
            for r in rows {
                w.write_record(r).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
    }
}

/// Run with explicit arguments (the first is the program name); returns the
/// exit code. Output goes to `out` unless `--output` names a file.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            // one line: clap's message without the usage and help hints
            let msg = e.to_string();
            let parts: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            let _ = writeln!(err, "{}", if parts.is_empty() { "error: usage error".into() } else { parts.join(" ") });
            return EXIT_USAGE;
        }
    };
    let report = match commands::execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return error_code(&e);
        }
    };
    let text = match render(&report, cli.format) {
        Ok(t) => t,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(m) = written {
        let _ = writeln!(err, "error: {m}");
        return EXIT_FAIL;
    }
    if report.ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Entry point for the binary.
pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
