use std::process::ExitCode;

use cantor_cli::{run, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    ExitCode::from(run(&config))
}
