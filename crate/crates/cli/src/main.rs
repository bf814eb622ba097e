//! Command-line front end for the exact G2/Dirac toolkit.
//!
//! Exit codes: 0 when every check passes, 1 when a verification check
//! fails, 2 on usage or configuration errors.

mod commands;
mod exact_json;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use g2dirac_core::exact::{parse_rational, Rational};

use commands::torus_cmd::OutputFormat;

const TORUS_DEFAULT_CAP: u64 = 64;

#[derive(Parser)]
#[command(
    name = "g2dirac",
    version,
    about = "Exact-arithmetic verification and Dirac-spectrum calculator for 7-dimensional spin geometry"
)]
struct Cli {
    /// Also write the JSON report to this directory (or set G2DIRAC_REPORT_DIR).
    #[arg(long, global = true)]
    report_dir: Option<PathBuf>,
    /// Include wall-clock timing in the JSON report (reports are otherwise
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Clifford relation table, contraction identities, Hodge involution,
    /// the rank/kernel check of the spinor action map and cross-operator identities.
    VerifyAlgebra {
        /// Seed for the randomized instances; identical seeds give
        /// identical reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The coframe relations (−2, +6, +6), the two *ω³ expansions and the
    /// induced λ¹ values.
    VerifySasakian,
    /// Exact Dirac mode spectra on the flat 7-torus up to |k|² ≤ N.
    Torus {
        #[arg(long)]
        max_norm_sq: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Safety cap on max-norm-sq.
        #[arg(long, default_value_t = TORUS_DEFAULT_CAP)]
        cap: u64,
    },
    /// Dirac spectrum and μ₂(D²) from a spectral-input document.
    Predict {
        /// JSON document with keys n, a, class, lambda0[], lambda1_plus[],
        /// lambda1_minus[], Lambda1.
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Built-in inputs: "sasaki5" or "torus".
        #[arg(long)]
        preset: Option<String>,
    },
    /// Generic eigenvalue bounds for dimension n and Killing number a.
    Bounds {
        #[arg(long)]
        n: u32,
        /// Killing number as a rational "p/q".
        #[arg(long)]
        a: String,
        /// First Laplace eigenvalue on functions, as "p/q".
        #[arg(long = "lambda0-1")]
        lambda0_1: Option<String>,
        /// First coclosed 1-form eigenvalue Λ₁, as "p/q".
        #[arg(long = "big-lambda1")]
        big_lambda1: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(&cli, started) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct UsageError(String);

fn parse_rational_arg(name: &str, value: &str) -> Result<Rational, UsageError> {
    parse_rational(value)
        .map_err(|e| UsageError(format!("--{name}: {e} (decimals are not accepted)")))
}

fn dispatch(cli: &Cli, started: Instant) -> Result<ExitCode, UsageError> {
    let (mut report, payload) = match &cli.command {
        Command::VerifyAlgebra { seed } => (commands::verify_algebra::run(*seed), None),
        Command::VerifySasakian => (commands::verify_sasakian::run(), None),
        Command::Torus {
            max_norm_sq,
            format,
            cap,
        } => {
            if *max_norm_sq < 1 || max_norm_sq > cap {
                return Err(UsageError(format!(
                    "--max-norm-sq must lie in 1..={cap} (cap configurable via --cap)"
                )));
            }
            let fmt = match format {
                Format::Json => OutputFormat::Json,
                Format::Csv => OutputFormat::Csv,
            };
            let mut stdout = std::io::stdout().lock();
            let outcome = commands::torus_cmd::run(*max_norm_sq, fmt, &mut stdout)
                .map_err(|e| UsageError(format!("io error: {e}")))?;
            (outcome.report, outcome.payload)
        }
        Command::Predict { config, preset } => {
            let source = match (config, preset.as_deref()) {
                (Some(path), None) => {
                    let doc = std::fs::read_to_string(path)
                        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
                    let input = exact_json::parse_spectral_input(&doc)
                        .map_err(|e| UsageError(format!("{e}")))?;
                    commands::predict::PredictSource::Config(Box::new(input))
                }
                (None, Some("sasaki5")) => commands::predict::PredictSource::PresetSasaki5,
                (None, Some("torus")) => commands::predict::PredictSource::PresetTorus,
                (None, Some(other)) => {
                    return Err(UsageError(format!(
                        "unknown preset {other:?}; available: sasaki5, torus"
                    )));
                }
                (None, None) => {
                    return Err(UsageError(
                        "predict needs --config FILE or --preset NAME".into(),
                    ));
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let outcome = commands::predict::run(source);
            (outcome.report, outcome.payload)
        }
        Command::Bounds {
            n,
            a,
            lambda0_1,
            big_lambda1,
        } => {
            let a = parse_rational_arg("a", a)?;
            let l0 = lambda0_1
                .as_deref()
                .map(|s| parse_rational_arg("lambda0-1", s))
                .transpose()?;
            let l1 = big_lambda1
                .as_deref()
                .map(|s| parse_rational_arg("big-lambda1", s))
                .transpose()?;
            let outcome = commands::bounds::run(*n, &a, l0.as_ref(), l1.as_ref());
            (outcome.report, outcome.payload)
        }
    };

    let elapsed = started.elapsed();
    if cli.timings {
        report.timing_ms = Some(elapsed.as_millis() as u64);
    }
    eprintln!(
        "{}: {} checks, {} in {:.2?}",
        report.command,
        report.checks.len(),
        if report.all_passed() {
            "all passed"
        } else {
            "FAILURES"
        },
        elapsed
    );

    let mut document = serde_json::to_value(&report).expect("report serializes");
    if let Some(payload) = payload {
        document
            .as_object_mut()
            .expect("report is an object")
            .insert("result".into(), payload);
    }
    let rendered = serde_json::to_string_pretty(&document).expect("document serializes");
    // CSV mode has already streamed its table to stdout; the report then
    // goes to stderr so the CSV stays machine-readable.
    let csv_mode = matches!(
        &cli.command,
        Command::Torus {
            format: Format::Csv,
            ..
        }
    );
    if csv_mode {
        eprintln!("{rendered}");
    } else {
        println!("{rendered}");
    }

    let report_dir = cli
        .report_dir
        .clone()
        .or_else(|| std::env::var_os("G2DIRAC_REPORT_DIR").map(PathBuf::from));
    if let Some(dir) = report_dir {
        std::fs::create_dir_all(&dir)
            .map_err(|e| UsageError(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(format!("{}.json", report.command));
        let mut file = std::fs::File::create(&path)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
        file.write_all(rendered.as_bytes())
            .and_then(|()| file.write_all(b"\n"))
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }

    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
