//! `maglab`: runs the frequency-function verification suites of
//! `maglab-core` from a JSON configuration and writes an NDJSON report plus
//! per-triple CSV profiles.
//!
//! Exit codes: `0` when every asserted check passes, `1` when at least one
//! asserted check fails, `2` on configuration, evaluation or IO errors.

pub mod config;
pub mod output;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

pub use config::RunConfig;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Profile,
    Doubling,
    Vanish,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Profile => "profile",
            Command::Doubling => "doubling",
            Command::Vanish => "vanish",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "maglab",
    version,
    about = "Frequency-function checks for magnetic Schrödinger equations"
)]
pub struct Cli {
    /// Suite to run; defaults to the `commands` list of the configuration.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// NDJSON report path (overrides `output.report`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for CSV profiles (overrides `output.csv_dir`).
    #[arg(long)]
    pub csv_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration at `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("cannot read `{key}` ({path}): {source}")]
    Read {
        key: &'static str,
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write `{key}` ({path}): {source}")]
    Write {
        key: &'static str,
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("evaluation failed for `{triple}`: {source}")]
    Evaluation {
        triple: String,
        source: maglab_core::Error,
    },
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed = 0,
    Failed = 1,
    Error = 2,
}

/// Parses `args` (including the program name) and runs; diagnostics go to
/// `stderr`.
pub fn main_with_args<I, T>(args: I, stderr: &mut dyn Write) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stderr),
        Err(e) => {
            let _ = write!(stderr, "{e}");
            if e.use_stderr() {
                Status::Error
            } else {
                Status::Passed
            }
        }
    }
}

pub fn run(cli: &Cli, stderr: &mut dyn Write) -> Status {
    match execute(cli) {
        Ok(summary) => {
            for failure in summary.failures.iter().take(20) {
                let _ = writeln!(stderr, "FAIL {failure}");
            }
            let _ = writeln!(
                stderr,
                "maglab: {} records, {} asserted failures; report written to {}",
                summary.records,
                summary.failures.len(),
                summary.report.display()
            );
            if summary.failures.is_empty() {
                Status::Passed
            } else {
                Status::Failed
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "maglab: error: {e}");
            Status::Error
        }
    }
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub records: usize,
    pub failures: Vec<String>,
    pub report: PathBuf,
    pub csv_files: Vec<PathBuf>,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

pub fn execute(cli: &Cli) -> Result<Summary, CliError> {
    let bytes = std::fs::read(&cli.config).map_err(|source| CliError::Read {
        key: "--config",
        path: cli.config.clone(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Config {
        key: String::from("<root>"),
        message: format!("configuration is not UTF-8: {e}"),
    })?;
    let config = RunConfig::from_json(text)?;
    let base = cli.config.parent().unwrap_or(Path::new("."));
    let report_path = cli
        .out
        .clone()
        .unwrap_or_else(|| resolve(base, &config.output.report));
    let csv_dir = cli
        .csv_dir
        .clone()
        .unwrap_or_else(|| resolve(base, &config.output.csv_dir));
    let commands = match cli.command {
        Some(c) => vec![c],
        None => config.commands.clone(),
    };

    let mut runner = suite::Runner::new(&config)?;
    let mut records = Vec::new();
    let mut csv_files = Vec::new();
    for &command in &commands {
        match command {
            Command::Verify => records.extend(runner.verify()?),
            Command::Doubling => records.extend(runner.doubling()?),
            Command::Vanish => records.extend(runner.vanish()?),
            Command::Profile => {
                let profiles = runner.profiles()?;
                csv_files.extend(output::write_profiles(&csv_dir, &profiles)?);
                records.extend(
                    profiles
                        .iter()
                        .zip(&csv_files[csv_files.len() - profiles.len()..])
                        .map(|(p, path)| output::Record::Profile {
                            triple: p.label.clone(),
                            file: path
                                .file_name()
                                .map(|f| f.to_string_lossy().into_owned())
                                .unwrap_or_default(),
                            rows: p.len(),
                        }),
                );
            }
        }
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    let header = output::Header::new(&bytes, &commands);
    output::write_report(&report_path, &header, &records)?;
    let failures = records
        .iter()
        .filter_map(output::Record::failure_line)
        .collect();
    Ok(Summary {
        records: records.len(),
        failures,
        report: report_path,
        csv_files,
    })
}
