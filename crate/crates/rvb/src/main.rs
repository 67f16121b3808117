use std::process::ExitCode;

use clap::Parser;
use rvb::args::Cli;

fn main() -> ExitCode {
    match rvb::run(Cli::parse()) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("rvb: {e:#}");
            ExitCode::from(rvb::USAGE_EXIT_CODE)
        }
    }
}
