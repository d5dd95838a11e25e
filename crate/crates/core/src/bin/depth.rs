use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use depthlab::cli::{execute, report_error, Caps, Command, DepthCommand, RunConfig};

/// Depth of subalgebra pairs: inclusion matrices, subgroup pairs and
/// explicit Hopf algebras.
#[derive(Parser, Debug)]
#[command(name = "depth", version)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: DepthCommand,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => return ExitCode::from(report_error(&e) as u8),
    };
    let config = RunConfig {
        command: Command::Depth(cli.command),
        caps,
        output: cli.output,
    };
    ExitCode::from(execute(&config) as u8)
}
