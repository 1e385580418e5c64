use std::process::ExitCode;

use clap::Parser;
use molnoise_cli::config::{Args, RunConfig};
use molnoise_cli::{execute, exit_code};

fn main() -> ExitCode {
    let args = Args::parse();
    match RunConfig::from_args(args).and_then(|cfg| execute(&cfg)) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
