//! `simplexkit`: geometry reports for simplices, enclosing balls of point
//! sets and a bisection root finder.
//!
//! Reports go to standard output as single-line JSON; diagnostics go to
//! standard error. Exit codes: 0 success, 2 invalid input, 3 degenerate
//! simplex, 4 enumeration cap exceeded, 5 solver hit `--max-iter`, 6 no
//! sign criterion, 7 unknown function.

mod commands;
mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CorpusOptions, EncloseOptions, SolveOptions};
use error::CliError;

/// Environment variable that, when set, replaces `corpus --seed`.
const SEED_ENV: &str = "SIMPLEX_SEED";

#[derive(Parser)]
#[command(name = "simplexkit", version, about = "Geometry of m-simplices in R^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Medians, radii, thickness and enclosure report for simplex files.
    Analyze {
        /// Simplex files; reports are printed one per line in this order.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Exact minimum enclosing ball of a point set, checked against Jung's bound.
    Enclose {
        path: PathBuf,
        /// Ambient dimension; defaults to the dimension of the points.
        #[arg(long)]
        n: Option<usize>,
        /// Also bound by the largest barycentric circumradius over (n+1)-subsets.
        #[arg(long)]
        variant_jung: bool,
        /// Compare the MEB with the largest MEB over (n+1)-subsets.
        #[arg(long)]
        bw_check: bool,
    },
    /// Longest-edge bisection root finder on a built-in function.
    Solve {
        fn_name: String,
        simplex_path: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Write one JSON line per step to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Regular simplex with closed-form values next to computed ones.
    Regular {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        diam: f64,
    },
    /// Seeded random simplices, one simplex file per line.
    Corpus {
        /// Overridden by the SIMPLEX_SEED environment variable.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        coord_range: f64,
    },
}

fn report(err: &CliError) -> ExitCode {
    eprintln!("simplexkit: {err}");
    ExitCode::from(err.exit_code())
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = writeln!(out, "{text}");
}

fn seed_override(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            simplexkit::GeomError::InvalidArgument(format!(
                "{SEED_ENV} = {v:?} is not an unsigned integer"
            ))
            .into()
        }),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze { paths } => {
            let mut code = ExitCode::SUCCESS;
            let mut failed = false;
            for result in commands::analyze(&paths) {
                match result {
                    Ok(text) => emit(&text),
                    Err(e) => {
                        let c = report(&e);
                        if !failed {
                            code = c;
                            failed = true;
                        }
                    }
                }
            }
            Ok(code)
        }
        Command::Enclose {
            path,
            n,
            variant_jung,
            bw_check,
        } => {
            let opts = EncloseOptions {
                n,
                variant_jung,
                bw_check,
            };
            emit(&commands::enclose(&path, &opts)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            fn_name,
            simplex_path,
            tol,
            max_iter,
            trace,
        } => {
            let opts = SolveOptions {
                tol,
                max_iter,
                trace: trace.as_deref(),
            };
            let (text, status) = commands::solve_cmd(&fn_name, &simplex_path, &opts)?;
            emit(&text);
            Ok(status.map_or(ExitCode::SUCCESS, |e| report(&e)))
        }
        Command::Regular { m, n, diam } => {
            emit(&commands::regular(m, n, diam)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus {
            seed,
            count,
            m,
            n,
            coord_range,
        } => {
            let opts = CorpusOptions {
                seed: seed_override(seed)?,
                count,
                m,
                n,
                coord_range,
            };
            print!("{}", commands::corpus(&opts)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli).unwrap_or_else(|e| report(&e))
}
