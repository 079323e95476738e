//! `resonance` command line: `train`, `project`, `solve`, `spectrum`, `verify`.
//!
//! Exit codes: 0 success, 1 failed verification, 2 physics precondition,
//! 3 non-convergence, 4 I/O or fixture problem, 64 usage or malformed config.

mod commands;
mod config;
mod error;

pub use commands::{run_command, MatrixSource};
pub use config::{
    BasisSection, ChannelSection, ConfigError, IhhlSection, ModelSpec, PotentialSection, RunConfig, TargetSection,
    TrainingSection, UpdateSetting, CONFIG_ENV,
};
pub use error::{CliError, ExitStatus};

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ihhl::{EnergyUpdate, SolverKind};

#[derive(Debug, Parser)]
#[command(name = "resonance", version, about = "Complex-scaled resonances with eigenvector continuation and iterative HHL")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Run configuration (TOML, dotted keys).
    #[arg(long, global = true, env = CONFIG_ENV, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    pub out: PathBuf,
    /// Seed for random starting vectors; overrides `ihhl.seed`.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Format for tables and iteration traces.
    #[arg(long, global = true, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Read the fixture from this directory instead of the built-in copy.
    #[arg(long, global = true, value_name = "DIR")]
    pub fixture_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Classical,
    HhlIdeal,
    HhlCircuit,
}

impl From<SolverArg> for SolverKind {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Classical => SolverKind::Classical,
            SolverArg::HhlIdeal => SolverKind::HhlIdeal,
            SolverArg::HhlCircuit => SolverKind::HhlCircuit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UpdateArg {
    ShiftInvert,
    Rayleigh,
}

impl From<UpdateArg> for EnergyUpdate {
    fn from(u: UpdateArg) -> Self {
        match u {
            UpdateArg::ShiftInvert => EnergyUpdate::ShiftInvert,
            UpdateArg::Rayleigh => EnergyUpdate::Rayleigh,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct MatrixArgs {
    /// Use the bundled 8×8 θ = 20° Hamiltonian.
    #[arg(long)]
    pub fixture: bool,
    /// Matrix JSON file `{rows, cols, re, im}`.
    #[arg(long, value_name = "PATH")]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the bound training states and build the EC subspace.
    Train,
    /// Project the complex-scaled target Hamiltonian onto the EC subspace.
    Project {
        /// Training file written by `train`; defaults to `<out>/training.json`.
        #[arg(long, value_name = "PATH")]
        training: Option<PathBuf>,
    },
    /// Full spectrum by iterative HHL with cumulative deflation.
    Solve {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// JSON array of starting vectors, used in order before random ones.
        #[arg(long, value_name = "PATH")]
        seeds: Option<PathBuf>,
        /// Linear solver inside each iteration; overrides `ihhl.solver`.
        #[arg(long, value_enum)]
        solver: Option<SolverArg>,
        /// Energy update rule; overrides `ihhl.update`.
        #[arg(long, value_enum)]
        update: Option<UpdateArg>,
    },
    /// Dense spectrum of a matrix, or of the full-basis target Hamiltonian.
    Spectrum {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Run the acceptance suite and print a JSON report.
    Verify,
}

/// Parse `args`, run, and map the outcome to an exit status. Messages go to stderr.
pub fn run_from<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
        }
    };
    match run_command(&cli) {
        Ok(()) => ExitStatus::Success,
        Err(e) => {
            eprintln!("error: {e}");
            e.status()
        }
    }
}

pub fn main() -> ExitCode {
    ExitCode::from(run_from(std::env::args_os()) as u8)
}
