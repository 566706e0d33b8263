//! `choquet`: command-line front end.
//!
//! Exit codes: 0 success, 1 a finding (violation, failed fit, disagreement),
//! 2 bad input or usage.

use std::process::ExitCode;

use clap::Parser;

mod commands;
mod config;

use config::{Cli, RunConfig};

/// An error that ends the run before a result exists.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = RunConfig::resolve(cli).and_then(|cfg| {
        let out = commands::run(&cfg)?;
        commands::emit(&cfg, &out.body)?;
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
