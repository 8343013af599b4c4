//! Command-line front end: single-decision queries, parameter sweeps,
//! population simulations, and direct evaluation of the scalar primitives,
//! driven by flags and an optional TOML config file.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical/convergence
//! error, 4 I/O error.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use config::Config;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sigspend",
    version,
    about = "Optimal energy expenditure for binary signal detection under rational and prospect-theory decision models"
)]
struct Cli {
    /// Path to a TOML config file. Without it, the built-in default
    /// reproduces the standard loss-aversion sweep.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory (overrides output.dir from the config).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<String>,

    /// Output formats, comma separated (overrides output.formats).
    #[arg(long, global = true, value_delimiter = ',', value_name = "FMT")]
    format: Option<Vec<String>>,

    /// Population seed (overrides population.seed).
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Print the effective configuration as TOML and exit.
    #[arg(long, global = true)]
    dump_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the optimal energy decision under each model.
    Decide,
    /// Run the configured parameter sweep and write its CSV/SVG outputs.
    Sweep,
    /// Run the configured population simulation.
    Population,
    /// Evaluate a scalar primitive: q, omega, or chernoff.
    Fn {
        /// Function name (q | omega | chernoff).
        name: String,
        /// Function arguments. Negative numbers are accepted directly.
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

/// Errors at the command level, classified for the exit code.
#[derive(Debug)]
pub enum AppError {
    /// Invalid configuration or arguments (exit 2).
    Validation(Vec<String>),
    /// Bad subcommand usage (exit 2).
    Usage(String),
    /// A numerical routine failed (exit 3).
    Numeric(sigspend::Error),
    /// Filesystem trouble (exit 4).
    Io(String),
}

impl From<sigspend::Error> for AppError {
    fn from(e: sigspend::Error) -> Self {
        fn is_numeric(e: &sigspend::Error) -> bool {
            match e {
                sigspend::Error::Convergence { .. } | sigspend::Error::Evaluation { .. } => true,
                sigspend::Error::Sweep { source, .. } => is_numeric(source),
                _ => false,
            }
        }
        if is_numeric(&e) {
            AppError::Numeric(e)
        } else {
            AppError::Validation(vec![e.to_string()])
        }
    }
}

impl AppError {
    fn report(&self) -> ExitCode {
        match self {
            AppError::Validation(problems) => {
                for p in problems {
                    eprintln!("error: {p}");
                }
                ExitCode::from(2)
            }
            AppError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            AppError::Numeric(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
            AppError::Io(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(4)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    // the scalar primitives need no configuration
    if let Some(Command::Fn { name, args }) = &cli.command {
        return commands::cmd_fn(name, args);
    }

    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| AppError::Io(format!("reading {}: {e}", path.display())))?;
            Config::parse(&text).map_err(|e| AppError::Validation(vec![e]))?
        }
        None => Config::builtin(),
    };
    config.apply_overrides(cli.out.as_deref(), cli.format.as_deref(), cli.seed);

    if cli.dump_config {
        print!("{}", config.to_toml());
        return Ok(());
    }

    let resolved = config.resolve().map_err(AppError::Validation)?;
    match cli.command {
        Some(Command::Decide) => commands::cmd_decide(&resolved),
        Some(Command::Sweep) => commands::cmd_sweep(&resolved),
        Some(Command::Population) => commands::cmd_population(&resolved),
        Some(Command::Fn { .. }) => unreachable!("handled above"),
        None => Err(AppError::Usage(
            "missing subcommand (expected decide, sweep, population, or fn); see --help".to_string(),
        )),
    }
}
