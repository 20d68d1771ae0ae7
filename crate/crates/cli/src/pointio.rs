//! CSV input and output for point sets.
//!
//! One point per line, comma-separated decimal coordinates; lines
//! starting with `#` and blank lines are ignored. Values are written
//! with Rust's shortest round-trip rendering, so a write-then-read
//! reproduces every coordinate bit for bit.

use std::fs;
use std::io::Write;
use std::path::Path;

use diam_core::geometry::PointSet;

use crate::error::{HarnessError, Result};

fn io_err(path: &Path, source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_points(&text, &path.display().to_string())
}

/// Parses CSV text; `name` labels error messages.
pub fn parse_points(text: &str, name: &str) -> Result<PointSet> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dim: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            let value: f64 = token.parse().map_err(|_| HarnessError::Parse {
                path: name.to_string(),
                line: lineno + 1,
                detail: format!("not a number: {token:?}"),
            })?;
            if !value.is_finite() {
                return Err(HarnessError::Parse {
                    path: name.to_string(),
                    line: lineno + 1,
                    detail: format!("non-finite coordinate: {token:?}"),
                });
            }
            row.push(value);
        }
        match dim {
            None => dim = Some(row.len()),
            Some(d) if d != row.len() => {
                return Err(HarnessError::Parse {
                    path: name.to_string(),
                    line: lineno + 1,
                    detail: format!("expected {d} coordinates, found {}", row.len()),
                });
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(HarnessError::Parse {
            path: name.to_string(),
            line: 0,
            detail: "no points in input".to_string(),
        });
    }
    PointSet::from_rows(&rows).map_err(HarnessError::from)
}

/// Writes a point set as CSV, optionally preceded by `#`-prefixed
/// header lines.
pub fn write_points(s: &PointSet, path: &Path, header: Option<&str>) -> Result<()> {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    for p in s.iter() {
        let mut first = true;
        for c in p {
            if !first {
                out.push(',');
            }
            out.push_str(&format!("{c}"));
            first = false;
        }
        out.push('\n');
    }
    let mut file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| io_err(path, e))
}
