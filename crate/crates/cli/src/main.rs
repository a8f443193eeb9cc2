use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] eiei::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "eiei", version, about = "Bayesian optimization with EI and EIEI sampling criteria")]
struct Cli {
    /// Output directory (created if missing)
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for benchmarks (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Overrides the seed in the config file
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one sequential optimization and write trace.csv
    Optimize {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write EI and EIEI curves on a 1-D grid to criteria.csv
    DemoCriteria {
        #[arg(long)]
        config: PathBuf,
    },
    /// Benchmark strategies on Gaussian-process sample paths
    Bench {
        #[command(subcommand)]
        action: BenchCommand,
    },
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Run the benchmark and write records.csv and aggregate.csv
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Recompute aggregate.csv from a records file
    Aggregate {
        /// Records CSV (default: <out>/records.csv)
        #[arg(long)]
        records: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if cli.threads == Some(0) {
        return Err(CliError::Config("--threads must be at least 1".into()));
    }
    match cli.command {
        Command::Optimize { config } => commands::optimize(&config, &cli.out, cli.seed),
        Command::DemoCriteria { config } => commands::demo_criteria(&config, &cli.out, cli.seed),
        Command::Bench { action: BenchCommand::Run { config } } => {
            commands::bench_run(&config, &cli.out, cli.seed, cli.threads)
        }
        Command::Bench { action: BenchCommand::Aggregate { records } } => {
            let records = records.unwrap_or_else(|| cli.out.join("records.csv"));
            commands::bench_aggregate(&records, &cli.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
