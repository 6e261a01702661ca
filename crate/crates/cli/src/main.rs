//! `bellamp`: CSV sweeps, the verification suite and Monte Carlo estimation.
//!
//! Exit codes: 0 success, 1 failed invariant or runtime error, 2 usage error.

mod commands;
mod output;

use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;

use bellamp::metrology::DEFAULT_EPSILON_TAIL;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bellamp",
    version,
    about = "Squeezed Bell-state interferometry: sweeps, checks and Monte Carlo"
)]
struct Cli {
    /// Truncation tolerance on the probe's tail mass.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON_TAIL)]
    epsilon_tail: f64,

    /// Write CSV (or the verify report) here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Permit brute-force runs above the mean-photon-number ceiling.
    #[arg(long, global = true)]
    allow_long: bool,

    #[command(subcommand)]
    command: Command,
}

/// Squeezing given either directly or through the mean photon number.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
struct Squeezing {
    /// Squeezing strength r (>= 0).
    #[arg(long)]
    r: Option<f64>,
    /// Mean photon number of the probe (>= 1).
    #[arg(long)]
    nbar: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignalMode {
    Closed,
    Bruteforce,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
    Long,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parity signal S(r, phi) on a phase grid.
    #[command(allow_negative_numbers = true)]
    SignalSweep {
        #[command(flatten)]
        squeezing: Squeezing,
        #[arg(long, default_value_t = -TAU)]
        phi_min: f64,
        #[arg(long, default_value_t = TAU)]
        phi_max: f64,
        /// Number of phase points, endpoints included.
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = SignalMode::Closed)]
        mode: SignalMode,
        /// Largest mean photon number simulated by brute force without --allow-long.
        #[arg(long, default_value_t = 20.0)]
        bruteforce_ceiling: f64,
    },
    /// Phase sensitivity bounds versus mean photon number.
    SensitivityCurve {
        #[arg(long, default_value_t = 1.0)]
        nbar_min: f64,
        #[arg(long, default_value_t = 1e4)]
        nbar_max: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Space points linearly instead of logarithmically.
        #[arg(long)]
        linear: bool,
    },
    /// Run the invariant suite; exits 1 if any group fails.
    Verify {
        #[arg(value_enum, default_value_t = VerifyLevel::Fast)]
        level: VerifyLevel,
    },
    /// Monte Carlo estimation from sampled parity outcomes.
    #[command(allow_negative_numbers = true)]
    Estimate {
        #[command(flatten)]
        squeezing: Squeezing,
        /// True phase in radians, on the central branch around 0.
        #[arg(long)]
        phi: f64,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Figures of merit for one probe.
    ProbeInfo {
        #[command(flatten)]
        squeezing: Squeezing,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(format!("I/O error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(format!("CSV error: {e}"))
    }
}

impl From<bellamp::Error> for CliError {
    fn from(e: bellamp::Error) -> Self {
        use bellamp::Error::*;
        match e {
            Domain { .. }
            | OutOfBranch { .. }
            | CutoffExhausted { .. }
            | DegeneratePoint { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
