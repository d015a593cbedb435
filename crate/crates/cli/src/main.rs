use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kaehler_cli::checks::traceability_table;
use kaehler_cli::config::{Format, RunConfig, Suite, DEFAULT_TOL};
use kaehler_cli::evolve::{evolve, parse_point, preset, EvolveConfig, HamiltonianSource};
use kaehler_cli::{bloch, matrix_io, run_suite, CliError, Result};

#[derive(Parser)]
#[command(
    name = "kaehler",
    version,
    about = "Numerical checks of the Kähler geometry of pure quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a report.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Include wall_time_ms in the report, which makes it run-dependent.
        #[arg(long)]
        timing: bool,
    },
    /// Sample the Schrödinger flow of a Hamiltonian into a CSV trajectory.
    Evolve {
        /// pauli1, pauli2, pauli3, identity, random-gue, or a JSON matrix file.
        #[arg(long)]
        hamiltonian: String,
        /// Initial point as "q1,p1,q2,p2,...".
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: u64,
        /// Seed of the random-gue preset.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Project a list of two-mode vectors onto the Bloch sphere.
    BlochExport {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a preset Hamiltonian in the JSON matrix format.
    ExportMatrix {
        #[arg(long)]
        hamiltonian: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print every check of `--suite all` as a Markdown table.
    ListChecks,
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Verify {
            suite,
            dim,
            trials,
            seed,
            tol,
            out,
            format,
            timing,
        } => {
            let config = RunConfig {
                suite,
                dim,
                trials,
                seed,
                tol,
                out_path: out,
                format,
                timing,
            };
            let report = run_suite(&config)?;
            let failed: Vec<&str> = report.failures().map(|c| c.check_id.as_str()).collect();
            println!(
                "{}/{} checks passed; report written to {}",
                report.checks.len() - failed.len(),
                report.checks.len(),
                config.out_path.display()
            );
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(format!("failed checks: {}", failed.join(", "))))
            }
        }
        Command::Evolve {
            hamiltonian,
            z0,
            t_max,
            steps,
            seed,
            tol,
            out,
        } => {
            let z0 = parse_point(&z0).map_err(|e| CliError::Config(format!("--z0: {e}")))?;
            let summary = evolve(&EvolveConfig {
                hamiltonian: HamiltonianSource::parse(&hamiltonian),
                z0,
                t_max,
                steps,
                seed,
                tol,
                out: out.clone(),
            })?;
            println!(
                "wrote {} rows to {}; max norm drift {:e}",
                summary.rows,
                out.display(),
                summary.max_norm_drift
            );
            Ok(())
        }
        Command::BlochExport { input, out } => {
            let summary = bloch::bloch_export(&input, &out)?;
            println!(
                "wrote {} points to {}; skipped {} zero rows",
                summary.written,
                out.display(),
                summary.skipped.len()
            );
            Ok(())
        }
        Command::ExportMatrix {
            hamiltonian,
            dim,
            seed,
            out,
        } => {
            let h = preset(&hamiltonian, dim, seed)?;
            matrix_io::save_matrix(&out, &h)?;
            println!("wrote {}×{} matrix to {}", dim, dim, out.display());
            Ok(())
        }
        Command::ListChecks => {
            print!("{}", traceability_table());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let level = match kaehler_cli::log_level(std::env::var("VERIFY_LOG").ok().as_deref()) {
        Ok(level) => level,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
