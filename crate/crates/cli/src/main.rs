use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qdiscord_cli::Cli::parse();
    match qdiscord_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
