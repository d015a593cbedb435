//! Verification suites, Schrödinger-flow trajectories and Bloch-sphere
//! exports on top of the `kaehler` library.
//!
//! ```no_run
//! use kaehler_cli::config::{RunConfig, Suite};
//!
//! let report = kaehler_cli::run_suite(&RunConfig::new(Suite::Kahler, 4, "kahler.json")).unwrap();
//! println!("{} checks, pass = {}", report.checks.len(), report.pass);
//! ```

pub mod bloch;
pub mod checks;
pub mod config;
pub mod error;
pub mod evolve;
pub mod matrix_io;
pub mod report;
pub mod suites;

pub use error::{CliError, Result};

use config::RunConfig;
use report::{AtomicOutput, Report};

/// Validates `config`, runs its suite and writes the report atomically to
/// `config.out_path`. Failing checks still produce a report; see
/// [`Report::pass`].
pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let output = AtomicOutput::create(&config.out_path)?;
    let report = checks::run_checks(config)?;
    output.commit(&report.render()?)?;
    Ok(report)
}

/// Logging level from `VERIFY_LOG` (`quiet`, `info` or `debug`; default `info`).
pub fn log_level(value: Option<&str>) -> Result<log::LevelFilter> {
    match value {
        None | Some("info") => Ok(log::LevelFilter::Info),
        Some("quiet") => Ok(log::LevelFilter::Off),
        Some("debug") => Ok(log::LevelFilter::Debug),
        Some(other) => Err(CliError::Config(format!(
            "VERIFY_LOG must be quiet, info or debug, got `{other}`"
        ))),
    }
}
