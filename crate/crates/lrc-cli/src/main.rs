use std::process::ExitCode;

use clap::Parser;
use lrc_cli::cli::{run, Cli};

fn main() -> ExitCode {
    // Argument errors exit with clap's code 2 inside `parse`.
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
