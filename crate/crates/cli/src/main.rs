mod args;
mod commands;
mod verify;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};

/// Exit 1 for failed checks or computations, 2 for bad configuration.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<supoly::Error> for CliError {
    fn from(e: supoly::Error) -> Self {
        use supoly::Error as E;
        let code = match e {
            E::NoConvergence { .. } | E::QuadratureBudget { .. } | E::TailBound { .. } | E::ZeroDivisor { .. } => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("SUPOLY_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::config(format!("SUPOLY_THREADS={v:?} is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(e.to_string()))?;
    }
    Ok(())
}

/// Output text and whether every check passed.
fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    configure_threads()?;
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Table(a) => Ok((commands::table(a, fmt(Format::Json))?, true)),
        Command::Reduce(a) => Ok((commands::reduce(a, fmt(Format::Text))?, true)),
        Command::Bracket(a) => Ok((commands::bracket_cmd(a, fmt(Format::Text))?, true)),
        Command::Quadrature(a) => commands::quadrature(a, fmt(Format::Csv)),
        Command::Uniqueness(a) => Ok((commands::uniqueness(a)?, true)),
        Command::Verify(a) => {
            let report = verify::run(a)?;
            let text = match fmt(Format::Text) {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            Ok((text, report.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, ok) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
