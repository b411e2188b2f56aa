//! Command-line front end for the `vacuumprobe` library.
//!
//! Parsing and unit conversion happen once, in [`config`] and [`units`]; the
//! core only ever sees natural units. [`run`] evaluates sweeps on a rayon pool
//! and collects results by grid index, so the output does not depend on the
//! worker count. [`output`] renders a finished record as CSV, JSON or SVG from
//! a single writer.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod units;

use std::ffi::OsString;
use std::io::Write;

pub use config::{parse_config, CommandKind, Format, RunConfig};
pub use error::CliError;
pub use output::{write_outputs, OutputRecord, Results};
pub use run::run;

/// Parses, runs and writes outputs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match execute(args) {
        Ok(()) => 0,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = parse_config(args)?;
    let record = run(&config)?;
    match &config.output {
        Some(stem) => {
            for path in write_outputs(&record, stem, &config.formats)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(record.to_json().as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(())
}
