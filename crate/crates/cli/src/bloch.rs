//! Bloch-sphere export of a list of `N = 2` vectors.

use std::path::Path;

use kaehler::{project_point, HilbertPoint};

use crate::error::{CliError, Result};
use crate::evolve::parse_point;
use crate::report::AtomicOutput;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochSummary {
    pub written: usize,
    /// 1-based input line numbers of skipped zero vectors.
    pub skipped: Vec<usize>,
}

/// Reads one vector per line as `q1,p1,q2,p2`; blank lines and lines
/// starting with `#` are ignored. Writes `line,y1,y2,y3` with `|y| = ½`.
pub fn bloch_export(input: &Path, out: &Path) -> Result<BlochSummary> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::io(input, e))?;
    let bad = |line: usize, message: String| CliError::Input {
        path: input.to_path_buf(),
        message: format!("line {line}: {message}"),
    };
    let mut points: Vec<(usize, HilbertPoint)> = Vec::new();
    let mut skipped = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let z = parse_point(trimmed).map_err(|m| bad(line, m))?;
        if z.dim() != 2 {
            return Err(bad(line, format!("expected 4 coordinates, got {}", 2 * z.dim())));
        }
        if z.norm_sq() == 0.0 {
            log::warn!("line {line}: zero vector skipped");
            skipped.push(line);
            continue;
        }
        points.push((line, z));
    }
    let output = AtomicOutput::create(out)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::io(out, std::io::Error::other(e));
    w.write_record(["line", "y1", "y2", "y3"]).map_err(csv_err)?;
    for (line, z) in &points {
        let y = *project_point(z)?.y();
        w.write_record([
            line.to_string(),
            format!("{:?}", y[0]),
            format!("{:?}", y[1]),
            format!("{:?}", y[2]),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::io(out, std::io::Error::other(e.to_string())))?;
    output.commit(&bytes)?;
    Ok(BlochSummary {
        written: points.len(),
        skipped,
    })
}
