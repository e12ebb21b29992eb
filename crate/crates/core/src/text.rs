//! The plain-text matrix file format.
//!
//! ```text
//! field gf 7          (or: field rational)
//! rows 2 cols 3
//! 1 0 -1
//! 3/2 4 5
//! ```
//!
//! Entries are literals `-?[0-9]+(/[0-9]+)?`. Writing always emits canonical
//! literals, so `write_matrix(parse_matrix(s))` is a normal form of `s`.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

/// Whitespace-separated tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn end_column(line: &str) -> usize {
    line.chars().count() + 1
}

fn expect_keyword(line_no: usize, line: &str, toks: &[(usize, &str)], at: usize, word: &str) -> Result<()> {
    match toks.get(at) {
        Some((_, t)) if *t == word => Ok(()),
        Some((col, t)) => Err(Error::parse(line_no, *col, format!("expected `{word}`, found `{t}`"))),
        None => Err(Error::parse(line_no, end_column(line), format!("expected `{word}`"))),
    }
}

fn expect_count(line_no: usize, line: &str, toks: &[(usize, &str)], at: usize, what: &str) -> Result<usize> {
    match toks.get(at) {
        Some((col, t)) => t
            .parse::<usize>()
            .ok()
            .filter(|_| t.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::parse(line_no, *col, format!("invalid {what} `{t}`"))),
        None => Err(Error::parse(line_no, end_column(line), format!("expected {what}"))),
    }
}

fn reject_extra(line_no: usize, toks: &[(usize, &str)], expected: usize) -> Result<()> {
    match toks.get(expected) {
        Some((col, t)) => Err(Error::parse(line_no, *col, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

fn parse_header(line: &str) -> Result<FieldSpec> {
    let toks = tokens(line);
    expect_keyword(1, line, &toks, 0, "field")?;
    match toks.get(1) {
        Some((_, "rational")) => {
            reject_extra(1, &toks, 2)?;
            Ok(FieldSpec::rational())
        }
        Some((_, "gf")) => {
            let (col, p) = *toks
                .get(2)
                .ok_or_else(|| Error::parse(1, end_column(line), "expected modulus"))?;
            let modulus = p
                .parse::<u64>()
                .ok()
                .filter(|_| p.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| Error::parse(1, col, format!("invalid modulus `{p}`")))?;
            let spec = FieldSpec::prime(modulus).map_err(|e| Error::parse(1, col, e.to_string()))?;
            reject_extra(1, &toks, 3)?;
            Ok(spec)
        }
        Some((col, t)) => Err(Error::parse(1, *col, format!("unknown field `{t}`"))),
        None => Err(Error::parse(1, end_column(line), "expected `gf` or `rational`")),
    }
}

/// Parses a matrix file. With `field_override`, entries are read in that
/// field instead of the one named in the header (which must still be
/// well-formed).
pub fn parse_matrix(text: &str, field_override: Option<FieldSpec>) -> Result<Matrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let declared = parse_header(header)?;
    let spec = field_override.unwrap_or(declared);

    let dims = lines.next().ok_or_else(|| Error::parse(2, 1, "expected `rows <r> cols <c>`"))?;
    let toks = tokens(dims);
    expect_keyword(2, dims, &toks, 0, "rows")?;
    let rows = expect_count(2, dims, &toks, 1, "row count")?;
    expect_keyword(2, dims, &toks, 2, "cols")?;
    let cols = expect_count(2, dims, &toks, 3, "column count")?;
    reject_extra(2, &toks, 4)?;

    let mut entries = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 20));
    for r in 0..rows {
        let line_no = r + 3;
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(line_no, 1, format!("expected row {} of {rows}", r + 1)))?;
        let toks = tokens(line);
        for (c, &(col, tok)) in toks.iter().enumerate() {
            if c >= cols {
                return Err(Error::parse(line_no, col, format!("unexpected token `{tok}` (row has {cols} entries)")));
            }
            let value = spec
                .parse_element(tok)
                .map_err(|e| Error::parse(line_no, col, format!("`{tok}`: {e}")))?;
            entries.push(value);
        }
        if toks.len() < cols {
            return Err(Error::parse(
                line_no,
                end_column(line),
                format!("row {} has {} entries, expected {cols}", r + 1, toks.len()),
            ));
        }
    }
    for (i, line) in lines.enumerate() {
        if let Some(&(col, tok)) = tokens(line).first() {
            return Err(Error::parse(rows + 3 + i, col, format!("unexpected token `{tok}` after last row")));
        }
    }
    Matrix::from_entries(spec, rows, cols, entries)
}

/// Serializes in the file format with canonical literals.
pub fn write_matrix(m: &Matrix) -> String {
    let header = match m.spec().modulus() {
        Some(p) => format!("field gf {p}"),
        None => "field rational".to_string(),
    };
    format!("{header}\nrows {} cols {}\n{m}", m.rows(), m.cols())
}
