//! Command-line front end for `heston-geom`.
//!
//! Every record is produced by a single library call; the CLI adds argument
//! parsing and formatting only.

pub mod args;
pub mod commands;
pub mod output;
pub mod record;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::commands::{execute, Settings};
use crate::record::ErrorInfo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv`, runs the command and writes the result to `out`. Usage
/// errors go to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let settings = Settings::new(cli.tol);
    let (text, code) = match execute(&cli.command, &settings) {
        Ok(records) => (output::render(&records, cli.format, cli.quiet_meta), EXIT_OK),
        Err(e) => (output::render_error(&ErrorInfo::from(&e), cli.format), EXIT_COMPUTATION),
    };
    let _ = out.write_all(text.as_bytes());
    code
}
