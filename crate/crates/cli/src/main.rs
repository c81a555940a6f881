use std::process::ExitCode;

use clap::Parser;
use syzcert_cli::{emit_report, execute, exit_code, Cli, UsageError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = emit_report(&report, cli.common.format);
            print!("{text}");
            if let Some(path) = &cli.common.report {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            // computation failures are check failures, bad input is a usage error
            ExitCode::from(if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 })
        }
    }
}
