use std::process::ExitCode;

use clap::Parser;
use towerlim_cli::app::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = outcome.emit(cli.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
