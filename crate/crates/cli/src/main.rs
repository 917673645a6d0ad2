use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use glrmc_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match glrmc_cli::run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(glrmc_cli::EXIT_ERROR)
        }
    }
}
