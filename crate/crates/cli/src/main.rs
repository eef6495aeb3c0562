//! `leoplan`: command-line front end for the LEO planning models.
//!
//! Exit codes: 0 on success, 2 on invalid input, 1 on internal or I/O errors.

mod args;
mod commands;
mod config;
mod error;
mod report;
mod svg;
mod sweep;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Format};
use crate::config::RunConfig;
use crate::error::{CliError, Result};

fn run(cli: &Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let format = cli.format.or(config.output_format).unwrap_or(Format::Table);
    let out = cli.out.clone().or_else(|| config.output_path.clone());

    let report = commands::run(&cli.command, &config)?;
    let text = report.render(format)?;

    // Table and JSON carry warnings inline; CSV and SVG stay pure data.
    if matches!(format, Format::Csv | Format::Svg) {
        for note in &report.notes {
            eprintln!("warning: {note}");
        }
    }

    match out {
        Some(path) => fs::write(&path, text).map_err(|source| CliError::Io {
            context: format!("cannot write {}", path.display()),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    context: "cannot write to standard output".into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
