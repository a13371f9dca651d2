//! `yrk`: build Yangian representations, compute R-matrix factors and run
//! identity checks from the command line.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{run, CliError};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use yrk::error::ErrorClass;
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Schema => 2,
                ErrorClass::MathDomain => 3,
            },
            CliError::Io { .. } | CliError::Json(_) | CliError::Usage(_) => 2,
        }
    }
}
