//! `riccati`: catalog browsing, structure checks, monodromy and table verification.

mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use commands::{CliError, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.config().and_then(|cfg| commands::run(&cli.command, &cfg));
    match result {
        Ok(Outcome { json, markdown, status }) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json).expect("serializable report") + "\n",
                Format::Md => markdown,
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.status())
        }
    }
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}
