use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    if let Err(e) = tempus_cli::init_thread_pool() {
        eprintln!("{e}");
        return ExitCode::from(e.exit_code());
    }
    let cli = tempus_cli::Cli::parse();
    match tempus_cli::execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
