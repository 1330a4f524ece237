//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical degeneracy,
//! 4 solver failure.

mod commands;
mod config;
mod plot;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::SimulateFile;

use crate::error::Result;

#[derive(Debug, Parser)]
#[command(
    name = "sgn-whitham",
    version,
    about = "Cnoidal waves and Whitham modulation of the SGN equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one period of a cnoidal wave and print its constants.
    Wave(WaveArgs),
    /// Characteristic speeds of the modulation system at one state.
    Eigen(EigenArgs),
    /// Classify hyperbolicity over an (s, tau) window.
    Scan(ScanArgs),
    /// Integrate a perturbed wave train with the SGN solver.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WaveSpec {
    /// Roots h0,h1,h2 of the cubic, increasing.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub roots: Vec<f64>,
    /// Gravitational acceleration.
    #[arg(long, default_value_t = 10.0)]
    pub g: f64,
    /// Sign of the mass flux m (-1 or 1).
    #[arg(long, default_value = "-1", allow_negative_numbers = true)]
    pub sign: i32,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub wave: WaveSpec,
    /// Number of samples over one period (at least 16).
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Phase speed D; defaults to the value with zero mean velocity.
    #[arg(long, allow_negative_numbers = true)]
    pub phase_speed: Option<f64>,
    #[arg(long, default_value = "wave_profile.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[command(flatten)]
    pub wave: WaveSpec,
    /// Phase speed D.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "galilean_u")]
    pub phase_speed: Option<f64>,
    /// Mean velocity U; D = U − m/h̄. Defaults to 0.
    #[arg(long = "galilean-U", id = "galilean_u", allow_negative_numbers = true)]
    pub galilean_u: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 1.0)]
    pub s_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tau_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub tau_max: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 50)]
    pub grid: usize,
    /// Inset from each window edge.
    #[arg(long, default_value_t = crate::modulation::DEFAULT_MARGIN)]
    pub margin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub g: f64,
    #[arg(long, default_value = "-1", allow_negative_numbers = true)]
    pub sign: i32,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value = "scan.csv")]
    pub out: PathBuf,
    /// Gnuplot script; defaults to the CSV path with a .gp extension.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML file with the same keys as the flags (underscored).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub roots: Option<Vec<f64>>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sign: Option<i32>,
    #[arg(long)]
    pub n_waves: Option<usize>,
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub cells_per_wavelength: Option<usize>,
    /// Final time; overrides --periods.
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Final time in wave periods L/|D|.
    #[arg(long)]
    pub periods: Option<f64>,
    /// Checkpoint times.
    #[arg(long, value_delimiter = ',')]
    pub checkpoints: Option<Vec<f64>>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// minmod, mc or vanleer.
    #[arg(long)]
    pub limiter: Option<String>,
    #[arg(long)]
    pub diagnostics_every: Option<usize>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Validate and write the manifest without integrating.
    #[arg(long)]
    pub dry_run: bool,
}

/// Parse `args` and run; usage errors exit the process through clap.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    run(cli, out)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Wave(a) => commands::wave(&a, out),
        Command::Eigen(a) => commands::eigen(&a, out),
        Command::Scan(a) => commands::scan(&a, out),
        Command::Simulate(a) => commands::simulate(&a, out),
    }
}
