//! Text and JSON interchange for generator matrices.
//!
//! Text format: a header line "n k", then k lines of n characters from
//! {0, 1}. Blank lines and lines starting with '#' are skipped.

use serde::{Deserialize, Serialize};

use crate::code::{BitVector, Label, LinearCode};
use crate::error::{Error, Result};

fn row_string(row: &BitVector) -> String {
    (0..row.len())
        .map(|i| if row.get(i) { '1' } else { '0' })
        .collect()
}

fn parse_row(line: &str, n: usize) -> Result<BitVector> {
    if line.len() != n {
        return Err(Error::Parse(format!(
            "row has {} characters, expected {n}",
            line.len()
        )));
    }
    let bits = line
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!(
                "unexpected character {other:?} in row"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BitVector::from_bits(&bits))
}

pub fn generator_text(code: &LinearCode) -> String {
    let mut s = format!("{} {}\n", code.length(), code.dimension());
    for row in code.rows() {
        s.push_str(&row_string(row));
        s.push('\n');
    }
    s
}

/// Parses the text format. Coordinates are labelled 0..n; use
/// [`LinearCode::relabel`] for other labels. The row count must match k,
/// and the rows must be independent.
pub fn parse_generator_text(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut it = header.split_whitespace();
    let mut field = |name: &str| -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("header is missing {name}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad {name} in header: {e}")))
    };
    let n = field("n")?;
    let k = field("k")?;
    if it.next().is_some() {
        return Err(Error::Parse("header has extra fields".into()));
    }
    let rows = lines.map(|l| parse_row(l, n)).collect::<Result<Vec<_>>>()?;
    if rows.len() != k {
        return Err(Error::Parse(format!(
            "expected {k} rows, found {}",
            rows.len()
        )));
    }
    let code = LinearCode::from_generators(n, rows)?;
    if code.dimension() != k {
        return Err(Error::Parse(format!(
            "rows span dimension {}, header says {k}",
            code.dimension()
        )));
    }
    Ok(code)
}

/// JSON mirror of the text format, with coordinate labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub k: usize,
    pub labels: Vec<Label>,
    pub rows: Vec<String>,
}

impl CodeJson {
    pub fn from_code(code: &LinearCode) -> Self {
        CodeJson {
            n: code.length(),
            k: code.dimension(),
            labels: code.labels().to_vec(),
            rows: code.rows().iter().map(row_string).collect(),
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        if self.labels.len() != self.n || self.rows.len() != self.k {
            return Err(Error::Parse("n, k disagree with labels or rows".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| parse_row(r, self.n))
            .collect::<Result<Vec<_>>>()?;
        let code = LinearCode::with_labels(rows, self.labels.clone())?;
        if code.dimension() != self.k {
            return Err(Error::Parse(format!(
                "rows span dimension {}, expected {}",
                code.dimension(),
                self.k
            )));
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::extended_quadratic_residue_code;

    #[test]
    fn text_round_trip() {
        let c = extended_quadratic_residue_code(17).unwrap();
        let text = generator_text(&c);
        assert!(text.starts_with("18 9\n"));
        let back = parse_generator_text(&text).unwrap();
        assert_eq!(back.rows(), c.rows());
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let c = extended_quadratic_residue_code(7).unwrap();
        let json = serde_json::to_string(&CodeJson::from_code(&c)).unwrap();
        assert!(json.contains("\"inf\""));
        let back: CodeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_code().unwrap(), c);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(parse_generator_text("").is_err());
        assert!(parse_generator_text("3 1\n10").is_err());
        assert!(parse_generator_text("3 2\n110\n110\n").is_err());
        assert!(parse_generator_text("3 1\n1x0\n").is_err());
        assert!(parse_generator_text("3 2\n110\n").is_err());
    }
}
