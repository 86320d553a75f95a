//! Command implementations behind the `entropic` binary.
//!
//! Every command is a pure function of its arguments and seed; output bytes
//! are identical across runs. Exit status: 0 when every check holds, 1 when
//! any check is violated, 2 on input or configuration errors.

pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("cannot parse input: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Engine(#[from] entropic::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Config(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io("output".into(), e)
    }
}

/// Runs one parsed invocation and returns the process exit status.
pub fn run(cli: config::Cli) -> i32 {
    use config::Command;

    let result = match &cli.command {
        Command::Sample(a) => commands::cmd_sample(a).and_then(|o| finish(&o, a.common.out.as_deref())),
        Command::Check(a) => commands::cmd_check(a).and_then(|(suite, o)| {
            eprintln!(
                "{} checks, {} violations, worst margin {:.3e}, {:.2?}",
                suite.aggregate.checks_run, suite.aggregate.violations, suite.aggregate.worst_margin, suite.wall_time
            );
            finish(&o, a.common.out.as_deref())
        }),
        Command::Sweep(a) => commands::cmd_sweep(a).and_then(|(suite, o)| {
            eprintln!(
                "{} checks, {} violations, worst margin {:.3e}, {:.2?}",
                suite.aggregate.checks_run, suite.aggregate.violations, suite.aggregate.worst_margin, suite.wall_time
            );
            finish(&o, a.common.out.as_deref())
        }),
        Command::Minimize(a) => commands::cmd_minimize(a).and_then(|(report, o)| {
            if !report.result.converged {
                eprintln!("warning: iteration budget exhausted; reporting best value found");
            }
            finish(&o, a.common.out.as_deref())
        }),
        Command::Tomogram(a) => commands::cmd_tomogram(a).and_then(|(_, o)| finish(&o, a.common.out.as_deref())),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn finish(output: &commands::Output, path: Option<&std::path::Path>) -> Result<i32, CliError> {
    commands::emit(output, path)?;
    Ok(if output.violations > 0 {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    })
}
