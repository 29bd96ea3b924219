//! Command-line front end for `bmy-core`.
//!
//! [`run`] executes a [`RunConfig`] and returns the exit status together
//! with everything that would be written to stdout and stderr, so the binary
//! is a thin wrapper and tests can drive the CLI in-process.

pub mod commands;
pub mod config;
pub mod encode;
pub mod error;
pub mod render;

pub use commands::Report;
pub use config::{Choices, Command, Format, RunConfig};
pub use error::{CliError, ExitStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command. A `threads` setting installs a dedicated rayon pool
/// for the duration of the call.
pub fn run(config: &RunConfig) -> Outcome {
    let result = match config.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| commands::execute(&config.command)),
            Err(e) => Err(CliError::invalid("ThreadPool", e.to_string())),
        },
        None => commands::execute(&config.command),
    };
    match result {
        Ok(report) => Outcome {
            status: report.status,
            stdout: render::render(&report, config.format),
            stderr: report
                .warnings
                .iter()
                .map(|w| format!("warning: {w}\n"))
                .collect(),
        },
        Err(err) => failure(&err, config.format),
    }
}

/// Parses the arguments (program name first) and runs. Help and version
/// requests succeed; any other parse error exits with status 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    match RunConfig::try_parse_from(args.iter().cloned()) {
        Ok(config) => run(&config),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    status: ExitStatus::Success,
                    stdout: text,
                    stderr: String::new(),
                };
            }
            let err = CliError::invalid("InvalidArguments", text.trim_end().to_string());
            failure(&err, requested_format(&args))
        }
    }
}

fn failure(err: &CliError, format: Format) -> Outcome {
    Outcome {
        status: err.status,
        stdout: render::render_error(err, format),
        stderr: format!("error: {err}\n"),
    }
}

/// Best-effort `--format` lookup for arguments clap rejected.
fn requested_format(args: &[std::ffi::OsString]) -> Format {
    let args: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let value = args.iter().enumerate().find_map(|(i, a)| {
        if a == "--format" {
            args.get(i + 1).cloned()
        } else {
            a.strip_prefix("--format=").map(str::to_string)
        }
    });
    match value.as_deref() {
        Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        _ => Format::Table,
    }
}
