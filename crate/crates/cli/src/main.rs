use std::process::ExitCode;

use clap::Parser;
use decomplab::args::Cli;
use decomplab::commands::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("decomplab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
