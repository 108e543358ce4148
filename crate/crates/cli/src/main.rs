mod args;
mod commands;
mod output;
mod sweep;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, EstimateCommand};

/// A malformed request that clap could not catch (config files, grid
/// syntax). Exits with status 2 like clap's own usage errors.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(UsageError("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match &cli.command {
        Command::Dims(a) => commands::dims(a),
        Command::Attractor(a) => commands::attractor(a),
        Command::Estimate(EstimateCommand::Box(a)) => commands::estimate_box(a),
        Command::Estimate(EstimateCommand::Local(a)) => commands::estimate_local(a),
        Command::Estimate(EstimateCommand::Lyapunov(a)) => commands::estimate_lyapunov(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
