mod commands;
mod error;
mod parse;
mod reproduce;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use voltlift::exec::Execution;

use crate::commands::{GenerateArgs, SpectrumArgs, VerifyCommand};
use crate::error::{usage, CliResult, Failure};

/// Token graphs of Cayley graphs as voltage-graph lifts.
#[derive(Debug, Parser)]
#[command(name = "voltlift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a Cayley graph, token graph, lift or voltage graph as JSON.
    Generate(GenerateArgs),
    /// Spectrum CSV through characters, irreducible representations, or directly.
    Spectrum(SpectrumArgs),
    /// Check an isomorphism or a spectral identity.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Recompute a reference table and compare it with the stored values.
    Reproduce {
        #[arg(value_enum)]
        table: reproduce::Table,
    },
}

/// `VOLTLIFT_THREADS` caps the worker pool; `1` runs everything sequentially.
fn execution() -> CliResult<Execution> {
    let threads = match std::env::var("VOLTLIFT_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    usage(format!("VOLTLIFT_THREADS='{v}' is not a positive integer"))
                })?,
        ),
        Err(_) => None,
    };
    if threads == Some(1) {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(Execution::default())
}

fn run(cli: Cli) -> CliResult<()> {
    let exec = execution()?;
    match &cli.command {
        Command::Generate(args) => commands::generate(args, exec),
        Command::Spectrum(args) => commands::spectrum(args, exec),
        Command::Verify(cmd) => commands::verify(cmd, exec),
        Command::Reproduce { table } => reproduce::reproduce(*table, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Mismatch(m) => println!("{m}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
