//! Plain-text CSV matrices: one row per line, comma-separated reals.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::matrix::Matrix;
use crate::spectral::SymMatrix;

pub fn parse_matrix_csv(text: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|field| {
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse { line: lineno + 1, message: format!("{field:?}: {e}") })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected {} fields, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    Matrix::from_rows(&rows)
}

pub fn format_matrix_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for r in m.row_iter() {
        for (j, v) in r.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").expect("write to String");
        }
        out.push('\n');
    }
    out
}

/// Reads a square symmetric matrix (symmetry checked to 1e-9).
pub fn read_sym_matrix(path: impl AsRef<Path>) -> Result<SymMatrix> {
    let text = std::fs::read_to_string(path)?;
    SymMatrix::new(parse_matrix_csv(&text)?)
}

pub fn read_adjacency(path: impl AsRef<Path>) -> Result<Graph> {
    Graph::from_adjacency(read_sym_matrix(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    std::fs::write(path, format_matrix_csv(m))?;
    Ok(())
}
