use std::path::PathBuf;
use std::process::ExitCode;

use acwd::cli::{self, OutputFormat};
use acwd::Error;
use clap::{Args, Parser, Subcommand};

/// Exact average coset weight distributions of LDPC matrix ensembles.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Ensemble document (JSON).
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum, default_value = "markdown")]
    format: OutputFormat,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print table cells as floats with 12 significant digits (csv/markdown).
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = 3)]
    j: usize,
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Normalized syndrome weights, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.2,0.4,0.6,0.8,1")]
    eta: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form ACWD table (or split tensor) of an ensemble.
    Acwd(SpecArgs),
    /// Closed form against exhaustive enumeration.
    Oracle(SpecArgs),
    /// Split-syndrome ACWD of a type II combined ensemble.
    SplitAcwd(SpecArgs),
    /// Growth-rate curves of a regular bipartite ensemble.
    Agr {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of grid intervals on [0, 1].
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Typical coset weight of a regular bipartite ensemble.
    TypicalWeight {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

fn emit(text: String, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Acwd(a) => emit(cli::cmd_acwd(&cli::read_spec(&a.spec)?, a.format, a.float)?, a.out.as_ref()),
        Command::Oracle(a) => emit(cli::cmd_oracle(&cli::read_spec(&a.spec)?, a.format, a.float)?, a.out.as_ref()),
        Command::SplitAcwd(a) => emit(cli::cmd_split_acwd(&cli::read_spec(&a.spec)?, a.format, a.float)?, a.out.as_ref()),
        Command::Agr { family: f, grid } => emit(cli::cmd_agr(f.j, f.k, &f.eta, grid, f.format)?, f.out.as_ref()),
        Command::TypicalWeight { family: f } => emit(cli::cmd_typical_weight(f.j, f.k, &f.eta, f.format)?, f.out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
