use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use orbitlift::cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = run(&cli);
    let mut out = std::io::stdout().lock();
    if out.write_all(outcome.text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
