use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use quatplace::control::{DesignOptions, Method};
use quatplace_cli::{commands, exit, CliError, Outcome};

/// Quaternionic companion forms and single-input pole placement.
///
/// Exit codes: 0 success, 1 parse error, 2 uncontrollable pair,
/// 3 verification failed, 4 target outside the method's scope, 5 divergence.
#[derive(Parser)]
#[command(name = "quatplace", version)]
struct Cli {
    #[command(flatten)]
    tol: Tolerances,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Tolerances {
    /// Per-class distance allowed when comparing spectra.
    #[arg(long, global = true, env = "QUATPLACE_MATCH_TOL", default_value_t = 1e-6)]
    match_tol: f64,
    /// Relative pivot threshold for rank and solves.
    #[arg(long, global = true, env = "QUATPLACE_PIVOT_TOL", default_value_t = 1e-12)]
    pivot_tol: f64,
    /// Required distance of every class from the imaginary axis.
    #[arg(long, global = true, default_value_t = 0.0)]
    stability_margin: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Matching,
    Ackermann,
}

#[derive(Subcommand)]
enum Command {
    /// Controllable companion form of a system file.
    Companion {
        system: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Feedback gain for a target; exit 3 unless matched and stable.
    Place {
        system: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value = "matching")]
        method: MethodArg,
        /// Let Ackermann run on nonreal coefficients, outside its validity range.
        #[arg(long)]
        allow_nonreal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Right-eigenvalue classes of the `A` matrix in a file.
    Spectrum {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a given gain against a target; exit 3 unless matched and stable.
    Verify {
        system: PathBuf,
        gain: PathBuf,
        target: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the closed loop with RK4 and write CSV.
    Simulate {
        system: PathBuf,
        gain: PathBuf,
        /// Initial state, JSON list of n quaternions.
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 10.0)]
        horizon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let t = cli.tol;
    for (name, v) in [("match tolerance", t.match_tol), ("pivot tolerance", t.pivot_tol)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Parse(format!("{name} must be positive, got {v}")));
        }
    }
    let opts = DesignOptions {
        match_tol: t.match_tol,
        pivot_tol: t.pivot_tol,
        stability_margin: t.stability_margin,
    };
    Ok(match cli.command {
        Command::Companion { system, out } => (commands::companion(&system)?, out),
        Command::Place {
            system,
            target,
            method,
            allow_nonreal,
            out,
        } => {
            let method = match method {
                MethodArg::Matching => Method::Matching,
                MethodArg::Ackermann => Method::Ackermann,
            };
            (commands::place(&system, &target, method, allow_nonreal, &opts)?, out)
        }
        Command::Spectrum { matrix, out } => (commands::spectrum(&matrix, opts.stability_margin)?, out),
        Command::Verify {
            system,
            gain,
            target,
            out,
        } => (commands::verify(&system, &gain, &target, &opts)?, out),
        Command::Simulate {
            system,
            gain,
            x0,
            dt,
            horizon,
            out,
        } => (commands::simulate(&system, &gain, &x0, dt, horizon)?, out),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(exit::PARSE),
            };
        }
    };
    match run(cli) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => fs::write(&path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(exit::PARSE);
            }
            if outcome.exit == exit::VERIFICATION {
                eprintln!("verification failed: achieved classes do not match the target or the loop is not stable");
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
