//! Sampled Schrödinger trajectories and Hamiltonian presets.

use std::path::PathBuf;

use kaehler::sampling::{random_hermitian, trial_rng};
use kaehler::{pauli_frame, schrodinger_flow, HermitianMatrix, HilbertPoint, C64};

use crate::error::{CliError, Result};
use crate::matrix_io::load_matrix;
use crate::report::AtomicOutput;

pub const PRESETS: [&str; 5] = ["pauli1", "pauli2", "pauli3", "identity", "random-gue"];

/// A named preset or a JSON matrix file.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianSource {
    Preset(String),
    File(PathBuf),
}

impl HamiltonianSource {
    pub fn parse(s: &str) -> Self {
        if PRESETS.contains(&s) {
            Self::Preset(s.to_string())
        } else {
            Self::File(PathBuf::from(s))
        }
    }

    /// The matrix for `dim` modes; `seed` only affects `random-gue`.
    pub fn resolve(&self, dim: usize, seed: u64) -> Result<HermitianMatrix> {
        match self {
            Self::File(path) => load_matrix(path),
            Self::Preset(name) => preset(name, dim, seed),
        }
    }
}

pub fn preset(name: &str, dim: usize, seed: u64) -> Result<HermitianMatrix> {
    if dim == 0 {
        return Err(CliError::Config("dim must be positive".into()));
    }
    let pauli = |k: usize| {
        if dim == 2 {
            Ok(HermitianMatrix::pauli(k))
        } else {
            Err(CliError::Config(format!("preset `{name}` needs dim = 2, got {dim}")))
        }
    };
    match name {
        "pauli1" => pauli(1),
        "pauli2" => pauli(2),
        "pauli3" => pauli(3),
        "identity" => Ok(HermitianMatrix::identity(dim)),
        "random-gue" => Ok(random_hermitian(dim, &mut trial_rng(seed, "random-gue", 0))),
        _ => Err(CliError::Config(format!(
            "unknown preset `{name}` (known: {})",
            PRESETS.join(", ")
        ))),
    }
}

/// Parses `"q1,p1,q2,p2,..."` into `z_a = q_a + i p_a`.
pub fn parse_point(s: &str) -> std::result::Result<HilbertPoint, String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{}`: {e}", v.trim())))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if values.is_empty() || values.len() % 2 != 0 {
        return Err(format!("expected an even number of coordinates, got {}", values.len()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    let z: Vec<C64> = values.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
    HilbertPoint::from_slice(&z).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveConfig {
    pub hamiltonian: HamiltonianSource,
    pub z0: HilbertPoint,
    pub t_max: f64,
    pub steps: u64,
    pub seed: u64,
    pub tol: f64,
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveSummary {
    pub rows: u64,
    pub max_norm_drift: f64,
}

pub fn csv_header(dim: usize) -> Vec<String> {
    let mut h = vec!["t".to_string()];
    h.extend((1..=dim).map(|a| format!("q{a}")));
    h.extend((1..=dim).map(|a| format!("p{a}")));
    h.push("norm_sq".into());
    if dim == 2 {
        h.extend(["y1", "y2", "y3"].map(String::from));
    }
    h
}

/// Writes rows `(t, q, p, ‖z‖², y)` at `t_k = t_max k / steps`, `k = 0..=steps`.
/// The trajectory is written even when the norm drifts beyond `tol`; the
/// drift is then reported as a check failure.
pub fn evolve(config: &EvolveConfig) -> Result<EvolveSummary> {
    if config.steps == 0 {
        return Err(CliError::Config("steps must be positive".into()));
    }
    if !config.t_max.is_finite() {
        return Err(CliError::Config("t-max must be finite".into()));
    }
    let z0 = &config.z0;
    z0.require_nonzero()
        .map_err(|_| CliError::Config("z0 must be nonzero".into()))?;
    let n = z0.dim();
    let h = config.hamiltonian.resolve(n, config.seed)?;
    if h.dim() != n {
        return Err(CliError::Config(format!(
            "Hamiltonian is {}×{} but z0 has {n} modes",
            h.dim(),
            h.dim()
        )));
    }
    let output = AtomicOutput::create(&config.out)?;
    let frame = (n == 2).then(|| pauli_frame(2).expect("two modes"));
    let r0 = z0.norm_sq();
    let mut drift: f64 = 0.0;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::io(&config.out, std::io::Error::other(e));
    w.write_record(csv_header(n)).map_err(csv_err)?;
    for k in 0..=config.steps {
        let t = config.t_max * k as f64 / config.steps as f64;
        let z = schrodinger_flow(&h, z0, t)?;
        drift = drift.max((z.norm_sq() - r0).abs());
        let mut row = vec![format!("{t:?}")];
        row.extend((0..n).map(|a| format!("{:?}", z.q(a))));
        row.extend((0..n).map(|a| format!("{:?}", z.p(a))));
        row.push(format!("{:?}", z.norm_sq()));
        if let Some(f) = &frame {
            row.extend(f.y(&z)?.iter().map(|y| format!("{y:?}")));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::io(&config.out, std::io::Error::other(e.to_string())))?;
    output.commit(&bytes)?;
    let summary = EvolveSummary {
        rows: config.steps + 1,
        max_norm_drift: drift,
    };
    log::info!(
        "wrote {} rows to {}, max norm drift {:e}",
        summary.rows,
        config.out.display(),
        drift
    );
    if drift > config.tol * r0.max(1.0) {
        return Err(CliError::CheckFailed(format!(
            "norm drift {drift:e} exceeds tol {:e}",
            config.tol * r0.max(1.0)
        )));
    }
    Ok(summary)
}
