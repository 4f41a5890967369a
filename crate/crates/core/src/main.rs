use std::process::ExitCode;

use clap::Parser;

use atga::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    ExitCode::from(execute(&cli, &mut stdout))
}
