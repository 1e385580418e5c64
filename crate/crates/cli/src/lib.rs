//! Command-line front end for `molnoise`: tables of the standard and channel
//! noise laws, seeded sampling, and the validation suites.

pub mod commands;
pub mod config;
pub mod output;
pub mod validate;

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;

use commands::Outcome;
use config::{Command, RunConfig, UsageError};

pub const EXIT_SUCCESS: u8 = 0;
pub const EXIT_VALIDATION_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NON_CONVERGENCE: u8 = 3;

/// Exit status for an error: 3 when a numerical method gave up, 2 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<UsageError>().is_some() {
            return EXIT_USAGE;
        }
        if let Some(e) = cause.downcast_ref::<molnoise::Error>() {
            return match e {
                molnoise::Error::NonConvergence { .. } | molnoise::Error::Range { .. } => {
                    EXIT_NON_CONVERGENCE
                }
                _ => EXIT_USAGE,
            };
        }
    }
    EXIT_USAGE
}

/// Default directory for `figures`.
pub const DEFAULT_FIGURES_DIR: &str = "figures";

/// Write the tables of `outcome`: into a directory for `figures`, to the
/// output file or stdout otherwise. Returns the files written.
pub fn emit(cfg: &RunConfig, outcome: &Outcome) -> Result<Vec<PathBuf>> {
    if cfg.command == Command::Figures {
        let dir = cfg
            .output_path
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_FIGURES_DIR));
        return output::write_tables(&dir, &outcome.tables, cfg.format);
    }
    let text: String = outcome
        .tables
        .iter()
        .map(|t| t.render(cfg.format))
        .collect();
    match &cfg.output_path {
        Some(path) => {
            output::write_file(path, &text)?;
            Ok(vec![path.clone()])
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(Vec::new())
        }
    }
}

/// Run a command end to end and return its exit status.
pub fn execute(cfg: &RunConfig) -> Result<u8> {
    let outcome = commands::run(cfg)?;
    let written = emit(cfg, &outcome)?;
    if let Some(s) = &outcome.summary {
        eprintln!("{s}");
    }
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(if outcome.passed {
        EXIT_SUCCESS
    } else {
        EXIT_VALIDATION_FAILURE
    })
}
