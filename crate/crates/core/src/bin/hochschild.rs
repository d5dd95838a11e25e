use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use depthlab::cli::{execute, report_error, Caps, Command, HochschildCommand, RunConfig};

/// Relative Hochschild cochains on tensor powers of `H / R^+ H`.
#[derive(Parser, Debug)]
#[command(name = "hochschild", version)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: HochschildCommand,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => return ExitCode::from(report_error(&e) as u8),
    };
    let config = RunConfig {
        command: Command::Hochschild(cli.command),
        caps,
        output: cli.output,
    };
    ExitCode::from(execute(&config) as u8)
}
