use std::process::ExitCode;

use clap::Parser;
use fairkc_cli::{run, Cli};

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
