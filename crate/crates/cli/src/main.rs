//! `tensorwalk` command-line front end.
//!
//! Exit codes: 0 when every route agreement holds, 1 on a consistency
//! failure, 2 on a usage error.

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CommandError, Report};

#[derive(Parser, Debug)]
#[command(name = "tensorwalk", version, about = "Exact distances for tensor-product walks on S_n and GL(n, q) irreducibles")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Separation curve of the S_n walk started at the trivial representation.
    SnSep(SnArgs),
    /// Total variation curve of the S_n walk.
    SnTv(SnArgs),
    /// Separation curve of the GL(n, q) walk.
    GlSep(GlArgs),
    /// Separation at r = ceil(n ln n + cn) against the limit profile.
    Profile(ProfileArgs),
    /// Occupancy (or F_q span) law, exact and by Monte Carlo.
    Occupancy(OccupancyArgs),
    /// Run every route-equality and structural check and print a table.
    Crosscheck(CrosscheckArgs),
    /// Distinct eigenvalues with multiplicities.
    Spectrum(SpectrumArgs),
}

#[derive(Args, Debug)]
pub struct SnArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub rmax: u32,
}

#[derive(Args, Debug)]
pub struct GlArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 20)]
    pub rmax: u32,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    /// Comma-separated list of n.
    #[arg(long, value_delimiter = ',', default_values_t = [128usize, 256, 512])]
    pub n: Vec<usize>,
    /// Comma-separated list of c.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1.0f64, 0.0, 1.0, 2.0])]
    pub c: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct OccupancyArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of balls (or vectors) r.
    #[arg(long)]
    pub rmax: u32,
    /// Field size; omit for balls in boxes.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub streams: u64,
}

#[derive(Args, Debug)]
pub struct CrosscheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Check GL(n, q) instead of S_n.
    #[arg(long)]
    pub q: Option<u64>,
    /// Largest r checked; defaults to 4n for S_n and 3n for GL(n, q).
    #[arg(long)]
    pub rmax: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: usize,
    /// Spectrum of the GL(n, q) walk instead of S_n.
    #[arg(long)]
    pub q: Option<u64>,
}

fn emit(report: &Report, config: &RunConfig) -> std::io::Result<()> {
    match &config.out {
        Some(path) => fs::write(path, &report.body),
        None => std::io::stdout().lock().write_all(report.body.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = RunConfig::parse();
    match commands::run(&config) {
        Ok(report) => {
            if let Err(e) = emit(&report, &config) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CommandError::Consistency(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
