mod args;
mod commands;
mod parse;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::CliError;

fn main() {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                // ignore a closed pipe while paging help
                let _ = write!(std::io::stdout(), "{e}");
                std::process::exit(0);
            }
            ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument => {
                eprintln!("{}", first_line(&e.to_string()));
                std::process::exit(64);
            }
            _ => {
                eprintln!("{}", first_line(&e.to_string()));
                std::process::exit(2);
            }
        },
    };
    match commands::run(cli.cmd) {
        Ok(()) => {}
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(err) => {
            eprintln!("{err}");
            std::process::exit(match err {
                CliError::Precondition(_) => 2,
                CliError::BadSequenceFile(_) => 65,
                CliError::Io(_) => 1,
            });
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or(s)
}
