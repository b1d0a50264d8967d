//! Command-line front end for tethered-UAV placement: one-shot solves,
//! parameter sweeps, and the minimum-inclination-angle distribution, all
//! emitting deterministic JSON/CSV artifacts.
//!
//! Exit codes: 0 success, 2 malformed input, 3 invariant violation.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tuav_place::channel::PathLossMode;

use config::{build_city, build_placement, build_sweep, parse_mode, CliError, RawConfig};

#[derive(Parser)]
#[command(
    name = "tuav-place",
    version,
    about = "Tethered-UAV base-station placement and tether-safety analysis"
)]
struct Cli {
    /// Path-loss combination mode: linear | additive-db (overrides the
    /// config file)
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<PathLossMode>,

    /// Directory for CSV and manifest artifacts
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// RNG seed for stochastic commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the loss-minimizing placement and print it as JSON
    Solve { config: PathBuf },
    /// Print the reduced search bounds that confine the optimum
    Bounds { config: PathBuf },
    /// Closed-form suboptimal placement (maximizes LoS probability)
    Suboptimal { config: PathBuf },
    /// Sweep d, theta_min_deg, or t_max and write per-point results to CSV
    Sweep { spec: PathBuf },
    /// CDF and mean of the minimum safe inclination angle
    #[command(name = "theta-min")]
    ThetaMin {
        config: PathBuf,
        /// Monte Carlo samples for the empirical CDF column (0 = analytic
        /// only)
        #[arg(long, default_value_t = 0)]
        samples: u64,
        /// Number of grid points over [0, 90] degrees
        #[arg(long, default_value_t = 90)]
        grid: usize,
    },
}

/// Honor TUAV_PLACE_THREADS as a cap on worker threads (0 = automatic).
fn configure_threads() {
    let Ok(raw) = std::env::var("TUAV_PLACE_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("warning: ignoring non-numeric TUAV_PLACE_THREADS={raw}"),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve { config } => {
            commands::cmd_solve(&build_placement(RawConfig::read(config)?, cli.mode)?)
        }
        Command::Bounds { config } => {
            commands::cmd_bounds(&build_placement(RawConfig::read(config)?, cli.mode)?)
        }
        Command::Suboptimal { config } => {
            commands::cmd_suboptimal(&build_placement(RawConfig::read(config)?, cli.mode)?)
        }
        Command::Sweep { spec } => {
            let input = build_sweep(RawConfig::read(spec)?, cli.mode)?;
            commands::cmd_sweep(&input, &cli.out, cli.seed)
        }
        Command::ThetaMin { config, samples, grid } => {
            let input = build_city(RawConfig::read(config)?)?;
            commands::cmd_theta_min(&input, &cli.out, *samples, cli.seed, *grid)
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
