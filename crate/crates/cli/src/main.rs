use std::process::ExitCode;

use clap::Parser;
use multivendor_cli::{run, RunConfig};

fn main() -> ExitCode {
    ExitCode::from(run(&RunConfig::parse()))
}
