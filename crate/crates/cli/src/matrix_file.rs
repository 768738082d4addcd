use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use varbound::linalg::ComplexMatrix;

/// On-disk matrix: `{"rows", "cols", "re", "im"}` with row-major 2-D arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            bail!("matrix must be non-empty, got {}x{}", self.rows, self.cols);
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != self.rows {
                bail!("'{name}' has {} rows, expected {}", part.len(), self.rows);
            }
            for (i, row) in part.iter().enumerate() {
                if row.len() != self.cols {
                    bail!("'{name}' row {i} has {} entries, expected {}", row.len(), self.cols);
                }
                if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                    bail!("'{name}'[{i}][{j}] is not finite");
                }
            }
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        let data = self
            .re
            .iter()
            .zip(&self.im)
            .flat_map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)))
            .collect();
        Ok(ComplexMatrix::from_vec(self.rows, self.cols, data)?)
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = (0..m.rows()).map(|i| m.row(i));
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: rows.clone().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: rows.map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite matrix serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    MatrixFile::parse(&text)
        .and_then(|f| f.to_matrix())
        .with_context(|| format!("parsing {}", path.display()))
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, MatrixFile::from_matrix(m).to_json() + "\n")
        .with_context(|| format!("writing {}", path.display()))
}
