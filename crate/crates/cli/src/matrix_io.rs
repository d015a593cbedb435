//! JSON matrix files: `{"dim": N, "re": [...], "im": [...]}` with both
//! arrays row-major.

use std::path::Path;

use kaehler::{Error, HermitianMatrix};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::report::write_atomic;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl MatrixFile {
    pub fn from_hermitian(h: &HermitianMatrix) -> Self {
        let n = h.dim();
        let row_major = |m: DMatrix<f64>| {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)])
                .collect()
        };
        Self {
            dim: n,
            re: row_major(h.re()),
            im: row_major(h.im()),
        }
    }

    /// Rejects wrong lengths and non-Hermitian content, reporting the
    /// residual `max |M - M†|`.
    pub fn to_hermitian(&self) -> std::result::Result<HermitianMatrix, String> {
        let n = self.dim;
        if n == 0 {
            return Err("dim must be positive".into());
        }
        for (name, v) in [("re", &self.re), ("im", &self.im)] {
            if v.len() != n * n {
                return Err(format!("`{name}` has {} entries, expected {}", v.len(), n * n));
            }
        }
        let re = DMatrix::from_row_slice(n, n, &self.re);
        let im = DMatrix::from_row_slice(n, n, &self.im);
        HermitianMatrix::from_parts(&re, &im).map_err(|e| match e {
            Error::NotHermitian { residual } => format!("matrix is not Hermitian: residual max|M - M†| = {residual:e}"),
            other => other.to_string(),
        })
    }
}

pub fn load_matrix(path: &Path) -> Result<HermitianMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let input = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let file: MatrixFile = serde_json::from_str(&text).map_err(|e| input(e.to_string()))?;
    file.to_hermitian().map_err(input)
}

pub fn save_matrix(path: &Path, h: &HermitianMatrix) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(&MatrixFile::from_hermitian(h)).expect("plain numbers serialize");
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}
