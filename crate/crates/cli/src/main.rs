//! `rpcheck`: check whether a potential's curl-form Poisson bivector is
//! compatible with the canonical metric of R³, and inspect the pieces.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit status for usage, parse and domain errors.
pub const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = commands::Output::default();
    let result = commands::run(cli, &mut out);
    // A reader that closed the pipe early has seen all it wants.
    let _ = std::io::stdout().lock().write_all(out.into_string().as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(diagnostic) => {
            eprintln!("error: {diagnostic}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
