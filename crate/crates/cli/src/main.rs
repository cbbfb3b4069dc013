//! `f2mq`: generate, solve and verify polynomial systems over GF(2), and
//! profile the parity engine.

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit status of one invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Usage,
    OracleMismatch,
    NotASolution,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        ExitCode::from(match s {
            Status::Ok => 0,
            Status::Usage => 1,
            Status::OracleMismatch => 2,
            Status::NotASolution => 3,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let benign = !e.use_stderr();
            let _ = e.print();
            return if benign { Status::Ok } else { Status::Usage }.into();
        }
    };
    match commands::run(cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            Status::Usage.into()
        }
    }
}
