//! `metcalfe` command-line tool.

mod commands;
mod config;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use metcalfe_core::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self { code: EXIT_DATA, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidParameter(_)
            | Error::DegenerateNetwork(_)
            | Error::EmptyNetwork
            | Error::LogRegimeUndefined(_)
            | Error::NonUniformGeography(_) => EXIT_USAGE,
            Error::Parse { .. }
            | Error::Io { .. }
            | Error::UnderdeterminedFit { .. }
            | Error::EmptyPointSet
            | Error::NoSessions
            | Error::EmstCapExceeded { .. } => EXIT_DATA,
            Error::Invariant(_) | Error::OutsideZipfSupport { .. } => EXIT_INVARIANT,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "metcalfe", version, about = "Traffic-load scaling simulator for spatial networks", args_override_self = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct GlobalArgs {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for simulation (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Flat `key = value` file mirroring long flags; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Clone, Copy)]
pub struct ModelArgs {
    /// Influence (friend-count) Zipf exponent.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub i: f64,
    /// Anchor radial exponent.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub s: f64,
    /// Destination-count Zipf exponent.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub d: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network with one session per node as JSON.
    Gen(commands::GenArgs),
    /// Simulate traffic load over a grid of network sizes.
    Simulate(commands::SimulateArgs),
    /// Print the asymptotic load order and its law.
    Theory(commands::TheoryArgs),
    /// Check measured loads against the theoretical order per regime.
    Scaling(commands::ScalingArgs),
    /// Fit the four law forms to an `n,value` series and rank them.
    Fit(commands::FitArgs),
    /// Grid-density uniformity check of point coordinates.
    Geo(commands::GeoArgs),
}

const SUBCOMMANDS: [&str; 6] = ["gen", "simulate", "theory", "scaling", "fit", "geo"];

fn run(args: Vec<OsString>) -> Result<(), CliError> {
    let args = match config::config_path(&args) {
        Some(path) => {
            let entries: Vec<_> =
                config::read_config(&path)?.into_iter().filter(|(k, _)| k != "config").collect();
            config::splice_config(args, &entries, &SUBCOMMANDS)
        }
        None => args,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return Ok(());
            }
            return Err(CliError::usage(e.render().to_string().trim_end().to_string()));
        }
    };
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be >= 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError { code: EXIT_INVARIANT, message: e.to_string() })?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Gen(a) => commands::gen(g, &a),
        Command::Simulate(a) => commands::simulate(g, &a),
        Command::Theory(a) => commands::theory(g, &a),
        Command::Scaling(a) => commands::scaling(g, &a),
        Command::Fit(a) => commands::fit(g, &a),
        Command::Geo(a) => commands::geo(g, &a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args_os().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
