//! `hamdecomp`: generate graphs, pack Hamilton cycles, verify packings and
//! run the exact oracles from the command line.

mod bench;
mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::manifest::RunManifest;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hamdecomp", version, about = "Hamilton cycle packing in regular tournaments and dense oriented graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the primary output here instead of stdout; the run manifest goes
    /// next to it as `<out>.manifest.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for commands with independent instances.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph in the plain-text edge-list format.
    Gen(commands::GenArgs),
    /// Pack edge-disjoint Hamilton cycles into an oriented graph.
    Decompose(commands::DecomposeArgs),
    /// Check a decomposition report against its graph.
    Verify(commands::VerifyArgs),
    /// Decompose every labeled regular tournament of a small order.
    KellyCheck(commands::KellyArgs),
    /// Perfect-matching count of the double cover with Brégman and Van der Waerden bounds.
    Bounds(commands::BoundsArgs),
    /// Median wall-clock timings over a size sweep.
    Bench(bench::BenchArgs),
}

/// What a command produced: the primary output and whether it passed.
pub struct Output {
    pub body: String,
    pub failure: Option<CliError>,
    pub inputs: Vec<PathBuf>,
}

impl Output {
    pub fn ok(body: String) -> Self {
        Output { body, failure: None, inputs: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Globals {
    pub format: Format,
    pub jobs: usize,
}

fn dispatch(command: &Command, globals: Globals) -> Result<(String, serde_json::Value, Option<u64>, Output), CliError> {
    fn params<T: Serialize>(a: &T) -> serde_json::Value {
        serde_json::to_value(a).expect("arguments serialize")
    }
    Ok(match command {
        Command::Gen(a) => ("gen".into(), params(a), a.seed, commands::gen(a, globals)?),
        Command::Decompose(a) => ("decompose".into(), params(a), Some(a.seed), commands::decompose(a, globals)?),
        Command::Verify(a) => ("verify".into(), params(a), None, commands::verify(a, globals)?),
        Command::KellyCheck(a) => ("kelly-check".into(), params(a), None, commands::kelly_check(a, globals)?),
        Command::Bounds(a) => ("bounds".into(), params(a), None, commands::bounds(a, globals)?),
        Command::Bench(a) => ("bench".into(), params(a), Some(a.seed), bench::bench(a, globals)?),
    })
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.jobs == 0 {
        return Err(CliError::Input("--jobs must be positive".into()));
    }
    let globals = Globals { format: cli.format, jobs: cli.jobs };
    let start = Instant::now();
    let (name, params, seed, output) = dispatch(&cli.command, globals)?;
    let manifest = RunManifest::new(name, params, seed, &output.inputs, output.body.as_bytes(), start.elapsed())?;
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &output.body).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            let mut mpath = path.clone().into_os_string();
            mpath.push(".manifest.json");
            std::fs::write(&mpath, manifest.to_json())
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", PathBuf::from(&mpath).display())))?;
        }
        None => {
            print!("{}", output.body);
            eprint!("{}", manifest.to_json());
        }
    }
    output.failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hamdecomp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
