use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use cyclomds_io::args::Cli;
use cyclomds_io::commands::run;
use cyclomds_io::{CliError, ExitStatus};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                code(ExitStatus::Usage)
            } else {
                code(ExitStatus::Success)
            };
        }
    };
    let outcome = match run(&cli.config, &cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return code(e.status());
        }
    };
    let written = match &cli.config.output {
        Some(path) => fs::write(path, &outcome.text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return code(ExitStatus::Usage);
    }
    code(outcome.status)
}

fn code(s: ExitStatus) -> ExitCode {
    ExitCode::from(s as u8)
}
