//! Command-line front end for `rvb-core`: CSV and JSON exports of collapsed
//! states, emission distributions and sweeps, a photon-count sampler, and the
//! verification runner.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;

use args::{Cli, Command};
use output::{emit, json_document, Meta};

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

/// Exit code for errors returned by [`run`]: bad parameters or unusable
/// output paths.
pub const USAGE_EXIT_CODE: u8 = 2;

pub fn run(cli: Cli) -> anyhow::Result<Status> {
    let (bytes, out, status) = match &cli.command {
        Command::Collapse(a) => (commands::collapse(a)?, a.output.out.as_deref(), Status::Success),
        Command::Dist(a) => (commands::dist(a)?, a.output.out.as_deref(), Status::Success),
        Command::Sweep(a) => (commands::sweep(a)?, a.output.out.as_deref(), Status::Success),
        Command::Sample(a) => (commands::sample(a)?, a.output.out.as_deref(), Status::Success),
        Command::Verify(a) => {
            let cfg = verify::VerifyConfig {
                max_mu: a.max_mu,
                tolerance: a.tolerance,
                fault: a.inject_fault,
            };
            let report = verify::run_verification(&cfg)?;
            for s in &report.stages {
                let mark = if s.passed { "PASS" } else { "FAIL" };
                eprintln!("{mark} {} ({} checks)", s.name, s.checks);
                for f in s.failures.iter().take(5) {
                    eprintln!("    {f}");
                }
            }
            let status = if report.passed { Status::Success } else { Status::VerificationFailed };
            let bytes = json_document(&Meta::new("verify", None), serde_json::to_value(&report)?)?;
            (bytes, a.out.as_deref(), status)
        }
    };
    emit(out, &bytes)?;
    Ok(status)
}
