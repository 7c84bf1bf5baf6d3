//! MatrixMarket `coordinate real general` files, 1-based.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use diter_core::SparseColumnMatrix;

use crate::error::{CliError, Result};

const HEADER: [&str; 5] = ["%%matrixmarket", "matrix", "coordinate", "real", "general"];

pub fn read_matrix(path: &Path) -> Result<SparseColumnMatrix> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_matrix(&text, path)
}

/// Parses MatrixMarket text. `path` is only used in error messages.
pub fn parse_matrix(text: &str, path: &Path) -> Result<SparseColumnMatrix> {
    let err = |line: usize, msg: String| CliError::parse(path, line, msg);
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));

    let (line_no, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != HEADER.len() || tokens.iter().zip(HEADER).any(|(t, h)| t != h) {
        return Err(err(
            line_no,
            format!("expected '%%MatrixMarket matrix coordinate real general', got '{header}'"),
        ));
    }

    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body
        .next()
        .ok_or_else(|| err(line_no + 1, "missing size line".into()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| err(size_line, format!("bad size field '{t}'")))
        })
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(err(size_line, "size line needs 'rows cols entries'".into()));
    };
    if rows != cols {
        return Err(err(size_line, format!("matrix must be square, got {rows}x{cols}")));
    }
    if rows == 0 {
        return Err(err(size_line, "matrix dimension is zero".into()));
    }

    let mut triplets = Vec::with_capacity(nnz);
    let mut seen = HashSet::with_capacity(nnz);
    let mut last_line = size_line;
    for (line, entry) in body {
        last_line = line;
        if triplets.len() == nnz {
            return Err(err(line, format!("more than the declared {nnz} entries")));
        }
        let fields: Vec<&str> = entry.split_whitespace().collect();
        let [i, j, v] = fields[..] else {
            return Err(err(line, format!("expected 'row col value', got '{entry}'")));
        };
        let index = |t: &str| match t.parse::<usize>() {
            Ok(k) if (1..=rows).contains(&k) => Ok(k - 1),
            _ => Err(err(line, format!("index '{t}' outside 1..={rows}"))),
        };
        let (i, j) = (index(i)?, index(j)?);
        let v: f64 = v.parse().map_err(|_| err(line, format!("bad value '{v}'")))?;
        if !v.is_finite() {
            return Err(err(line, format!("non-finite value '{v}'")));
        }
        if !seen.insert((i, j)) {
            return Err(err(line, format!("duplicate entry ({}, {})", i + 1, j + 1)));
        }
        triplets.push((i, j, v));
    }
    if triplets.len() != nnz {
        return Err(err(
            last_line,
            format!("declared {nnz} entries, found {}", triplets.len()),
        ));
    }
    SparseColumnMatrix::from_triplets(rows, triplets).map_err(|e| err(size_line, e.to_string()))
}

pub fn format_matrix(m: &SparseColumnMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(out, "{} {} {}", m.dim(), m.dim(), m.nnz());
    for (i, j, v) in m.triplets() {
        let _ = writeln!(out, "{} {} {v:?}", i + 1, j + 1);
    }
    out
}

pub fn write_matrix(path: &Path, m: &SparseColumnMatrix) -> Result<()> {
    fs::write(path, format_matrix(m)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use diter_core::cases::load_case;

    fn parse(text: &str) -> Result<SparseColumnMatrix> {
        parse_matrix(text, Path::new("t.mtx"))
    }

    fn line_of(e: CliError) -> usize {
        match e {
            CliError::Parse { line, .. } => line,
            other => panic!("not a parse error: {other}"),
        }
    }

    #[test]
    fn round_trips_case1() {
        let q = load_case("case1").unwrap().q;
        assert_eq!(parse(&format_matrix(&q)).unwrap(), q);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "%%MatrixMarket matrix coordinate real general\n% a comment\n\n2 2 2\n1 2 0.5\n\n2 1 1e0\n";
        let m = parse(text).unwrap();
        assert_eq!(m.to_dense(), vec![0.0, 0.5, 1.0, 0.0]);
    }

    #[test]
    fn empty_file() {
        assert_eq!(line_of(parse("").unwrap_err()), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let head = "%%MatrixMarket matrix coordinate real general\n";
        assert_eq!(line_of(parse("hello\n").unwrap_err()), 1);
        assert_eq!(line_of(parse(head).unwrap_err()), 2);
        assert_eq!(line_of(parse(&format!("{head}2 3 0\n")).unwrap_err()), 2);
        assert_eq!(line_of(parse(&format!("{head}2 2 1\n3 1 1.0\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse(&format!("{head}2 2 1\n1 1 x\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse(&format!("{head}2 2 2\n1 1 1\n1 1 2\n")).unwrap_err()), 4);
        assert_eq!(line_of(parse(&format!("{head}2 2 2\n1 1 1\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse(&format!("{head}2 2 1\n1 1 1\n2 2 1\n")).unwrap_err()), 4);
        assert_eq!(line_of(parse(&format!("{head}2 2 1\n0 1 1\n")).unwrap_err()), 3);
    }
}
