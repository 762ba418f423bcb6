//! Serialization of arrays: a diffable grid text format and a JSON
//! document. Both round-trip losslessly and are byte-stable across runs.
//!
//! Grid format: a header line `H <n> <k> [route]`, then one row per
//! line, cells separated by single spaces, empty cells rendered as `.`.

use heffter::HeffterArray;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parse or structural failure, located by line and column where the
/// input text admits one.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Structural(#[from] heffter::Error),
}

impl FormatError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError::Parse { line, column, message: message.into() }
    }
}

/// The on-disk form of an array: cell grid plus construction provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayDocument {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<Option<i32>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<String>,
}

impl ArrayDocument {
    pub fn from_array(array: &HeffterArray, provenance: Option<String>) -> Self {
        let n = array.n();
        let rows = (0..n)
            .map(|r| (0..n).map(|c| array.get(r, c)).collect())
            .collect();
        Self { n, k: array.k(), rows, provenance }
    }

    /// Validates shape and entries and builds the in-memory array.
    pub fn to_array(&self) -> Result<HeffterArray, FormatError> {
        Ok(HeffterArray::from_rows(self.n, self.k, self.rows.clone())?)
    }

    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("H {} {}", self.n, self.k));
        if let Some(route) = &self.provenance {
            out.push(' ');
            out.push_str(route);
        }
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Some(v) => v.to_string(),
                    None => ".".to_string(),
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_grid(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| FormatError::at(1, 1, "empty input"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("H") {
            return Err(FormatError::at(1, 1, "header must start with 'H'"));
        }
        let n: usize = fields
            .next()
            .ok_or_else(|| FormatError::at(1, 2, "header missing n"))?
            .parse()
            .map_err(|e| FormatError::at(1, 3, format!("bad n: {e}")))?;
        let k: usize = fields
            .next()
            .ok_or_else(|| FormatError::at(1, 4, "header missing k"))?
            .parse()
            .map_err(|e| FormatError::at(1, 5, format!("bad k: {e}")))?;
        let rest: Vec<&str> = fields.collect();
        let provenance = if rest.is_empty() { None } else { Some(rest.join(" ")) };

        let mut rows = Vec::with_capacity(n);
        for (index, line) in lines {
            let line_no = index + 1;
            if line.trim().is_empty() {
                continue;
            }
            if rows.len() == n {
                return Err(FormatError::at(line_no, 1, format!("more than {n} rows")));
            }
            let mut row = Vec::with_capacity(n);
            let mut pos = 0usize;
            for token in line.split_whitespace() {
                let start = line[pos..].find(token).map_or(pos, |p| pos + p);
                pos = start + token.len();
                if token == "." {
                    row.push(None);
                } else {
                    let value: i32 = token.parse().map_err(|e| {
                        FormatError::at(line_no, start + 1, format!("bad cell '{token}': {e}"))
                    })?;
                    row.push(Some(value));
                }
            }
            if row.len() != n {
                return Err(FormatError::at(
                    line_no,
                    1,
                    format!("row has {} cells, expected {n}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(FormatError::at(
                text.lines().count(),
                1,
                format!("found {} rows, expected {n}", rows.len()),
            ));
        }
        Ok(Self { n, k, rows, provenance })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn parse_json(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Dispatches on the leading character: `{` is JSON, anything else
    /// is the grid format.
    pub fn parse_auto(text: &str) -> Result<Self, FormatError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_grid(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use heffter::construct;

    #[test]
    fn grid_round_trip_with_route() {
        let built = construct(13, 3).unwrap();
        let doc = ArrayDocument::from_array(&built.array, Some(built.route.to_string()));
        let text = doc.to_grid();
        assert!(text.starts_with("H 13 3 mobius-ladder\n"));
        assert!(text.lines().nth(1).unwrap().starts_with("-12 26 . "));
        let back = ArrayDocument::parse_grid(&text).unwrap();
        assert_eq!(doc, back);
        assert_eq!(back.to_array().unwrap(), built.array);
    }

    #[test]
    fn json_round_trip() {
        let built = construct(7, 4).unwrap();
        let doc = ArrayDocument::from_array(&built.array, Some(built.route.to_string()));
        let back = ArrayDocument::parse_json(&doc.to_json()).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        let err = ArrayDocument::parse_grid("H 2 1\n1 x\n. 2\n").unwrap_err();
        match err {
            FormatError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column >= 3, "column {column}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ArrayDocument::parse_grid("X 2 1\n").is_err());
        assert!(ArrayDocument::parse_grid("H 2 1\n1 .\n").is_err());
    }

    #[test]
    fn zero_cells_are_structural_errors() {
        let doc = ArrayDocument::parse_grid("H 2 1\n0 .\n. 1\n").unwrap();
        assert!(matches!(doc.to_array(), Err(FormatError::Structural(_))));
    }
}
