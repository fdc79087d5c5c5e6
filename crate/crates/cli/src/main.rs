use std::process::ExitCode;

use clap::Parser;
use deltasigma_cli::commands::{render, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // clap exits with 2, which is reserved for inconclusive searches
            eprint!("error[usage]: {e}");
            return ExitCode::from(1);
        }
    };
    let report = run(&cli);
    let text = render(&report, cli.global.json);
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error[io]: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None if report.error.is_some() && !cli.global.json => eprint!("{text}"),
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code as u8)
}
