//! Vector files: one real per line. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use diter_core::DenseVector;

use crate::error::{CliError, Result};

pub fn read_vector(path: &Path) -> Result<DenseVector> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_vector(&text, path)
}

pub fn parse_vector(text: &str, path: &Path) -> Result<DenseVector> {
    let mut entries = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| CliError::parse(path, k + 1, format!("bad value '{line}'")))?;
        if !v.is_finite() {
            return Err(CliError::parse(path, k + 1, format!("non-finite value '{line}'")));
        }
        entries.push(v);
    }
    if entries.is_empty() {
        return Err(CliError::parse(path, text.lines().count().max(1), "no values"));
    }
    Ok(DenseVector::from(entries))
}

pub fn format_vector(v: &DenseVector) -> String {
    v.iter().fold(String::new(), |mut out, x| {
        let _ = writeln!(out, "{x:?}");
        out
    })
}

pub fn write_vector(path: &Path, v: &DenseVector) -> Result<()> {
    fs::write(path, format_vector(v)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let v = DenseVector::from(vec![0.1, -2.5e-17, 3.0]);
        assert_eq!(parse_vector(&format_vector(&v), Path::new("v")).unwrap(), v);
    }

    #[test]
    fn rejects_garbage_with_line() {
        let err = parse_vector("1\n\n# note\nnope\n", Path::new("v")).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }), "{err}");
        assert!(matches!(parse_vector("", Path::new("v")), Err(CliError::Parse { .. })));
    }
}
