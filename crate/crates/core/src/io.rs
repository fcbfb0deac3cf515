//! CSV and JSON matrix formats.
//!
//! CSV: one row per line, comma separated, LF or CRLF endings. Fields may be
//! padded with whitespace and may use scientific notation. Blank lines are
//! ignored; line numbers in errors refer to the original text.
//!
//! JSON: `{"rows": m, "cols": n, "data": [row-major numbers]}`.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub fn parse_csv(text: &str) -> Result<DenseMatrix> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut width: Option<usize> = None;
    let mut data = Vec::new();
    let mut rows = 0usize;

    for (lineno, line) in text.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::RaggedRow {
                    line: lineno + 1,
                    expected: w,
                    found: fields.len(),
                })
            }
            Some(_) => {}
        }
        for (j, field) in fields.iter().enumerate() {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| Error::BadField {
                row: rows + 1,
                col: j + 1,
                field: field.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    row: rows + 1,
                    col: j + 1,
                });
            }
            data.push(value);
        }
        rows += 1;
    }

    match width {
        None => Err(Error::EmptyInput),
        Some(cols) => DenseMatrix::new(rows, cols, data),
    }
}

/// Formats a matrix as CSV with shortest round-trip float formatting.
pub fn to_csv(m: &DenseMatrix) -> String {
    m.to_string()
}

pub fn parse_json(text: &str) -> Result<DenseMatrix> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn to_json(m: &DenseMatrix) -> String {
    serde_json::to_string(m).expect("matrix serialization is infallible")
}
