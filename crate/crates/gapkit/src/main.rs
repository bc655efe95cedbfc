//! `gapkit`: batch front-end for finite-gap spectral computations.
//!
//! Exit codes: 0 success, 2 malformed JSON input (with location),
//! 3 numerical failure (with the failing operation).

use clap::{Parser, Subcommand};
use gapkit::io::{self, DivisorInput, GapSetInput, InvertInput};
use gapkit::{run_adic, run_comb, run_divisor, run_freq, run_invert, run_potapov};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gapkit", version, about = "Finite-gap spectral computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Frequencies and identity diagnostics of a gap set.
    Freq {
        /// Input JSON ({"gaps": [[a1,b1],...]}).
        #[arg(long)]
        input: PathBuf,
        /// Output JSON path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-12)]
        quad_tol: f64,
    },
    /// Recover a gap set from frequency targets.
    Invert {
        /// Input JSON ({"eta": [...], "etat": [...], "initial_gaps": [...]}).
        #[arg(long)]
        input: PathBuf,
        /// Output JSON path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-12)]
        quad_tol: f64,
        /// Newton residual tolerance.
        #[arg(long, default_value_t = 1e-10)]
        newton_tol: f64,
    },
    /// Weyl data, companion divisor, traces, and the Abel character.
    Divisor {
        /// Input JSON ({"gaps": [...], "divisor": [[lambda,eps],...]}).
        #[arg(long)]
        input: PathBuf,
        /// Output JSON path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-12)]
        quad_tol: f64,
    },
    /// Comb-model gaps (CSV) and convergence diagnostics (JSON).
    Comb {
        /// Mass parameter rho > 0.
        #[arg(long)]
        rho: f64,
        /// Number of gaps to resolve.
        #[arg(long = "K", default_value_t = 20)]
        k: usize,
        /// Output base path: writes <out>.csv and <out>.json
        /// (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transfer ledger of elementary factors acting on a divisor.
    Potapov {
        /// Input JSON ({"gaps", "divisor", "factors": [{"rho","phi"},...]}).
        #[arg(long)]
        input: PathBuf,
        /// Output JSON path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The beta digit table and the exhaustive avoidance certificate.
    Adic {
        /// Certificate depth (>= 3).
        #[arg(long, default_value_t = 30)]
        depth: usize,
        /// Output JSON path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full deterministic check battery.
    Selftest {
        /// Seed for all sampling.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-12)]
        quad_tol: f64,
        /// Output JSON path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit 2: malformed input.
const EXIT_MALFORMED: u8 = 2;
/// Exit 3: numerical failure.
const EXIT_NUMERICAL: u8 = 3;

enum CliError {
    Malformed(String),
    Numerical(String),
}

fn read_input<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Malformed(format!(
            "{}: line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Malformed(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn numerical(op: &str) -> impl Fn(gapkit_core::Error) -> CliError + '_ {
    move |e| CliError::Numerical(format!("{op}: {e}"))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Freq { input, out, quad_tol } => {
            let input: GapSetInput = read_input(&input)?;
            let report = run_freq(&input, quad_tol).map_err(numerical("freq"))?;
            emit(&out, &io::to_json(&report))
        }
        Cmd::Invert {
            input,
            out,
            quad_tol,
            newton_tol,
        } => {
            let input: InvertInput = read_input(&input)?;
            let report =
                run_invert(&input, quad_tol, newton_tol).map_err(numerical("invert"))?;
            emit(&out, &io::to_json(&report))
        }
        Cmd::Divisor { input, out, quad_tol } => {
            let input: DivisorInput = read_input(&input)?;
            let report = run_divisor(&input, quad_tol).map_err(numerical("divisor"))?;
            emit(&out, &io::to_json(&report))
        }
        Cmd::Comb { rho, k, out } => {
            let (gaps, report) = run_comb(rho, k).map_err(numerical("comb"))?;
            let csv = io::comb_csv(&gaps);
            let json = io::to_json(&report);
            match out {
                Some(base) => {
                    emit(&Some(base.with_extension("csv")), &csv)?;
                    emit(&Some(base.with_extension("json")), &json)
                }
                None => emit(&None, &format!("{csv}{json}")),
            }
        }
        Cmd::Potapov { input, out } => {
            let input: DivisorInput = read_input(&input)?;
            let report = run_potapov(&input).map_err(numerical("potapov"))?;
            emit(&out, &io::to_json(&report))
        }
        Cmd::Adic { depth, out } => {
            let report = run_adic(depth).map_err(numerical("adic"))?;
            emit(&out, &io::to_json(&report))
        }
        Cmd::Selftest { seed, quad_tol, out } => {
            let report =
                gapkit::selftest::run(seed, quad_tol).map_err(numerical("selftest"))?;
            let pass = report.pass;
            emit(&out, &io::to_json(&report))?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Numerical("selftest: checks failed".to_string()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Malformed(m)) => {
            eprintln!("error (malformed input): {m}");
            ExitCode::from(EXIT_MALFORMED)
        }
        Err(CliError::Numerical(m)) => {
            eprintln!("error (numerical): {m}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
