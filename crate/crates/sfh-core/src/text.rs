//! Shared helpers for the line-oriented text formats.
//!
//! Every format in this crate is line based: `#` starts a comment that runs
//! to the end of the line (except on `label` lines, which are kept whole),
//! blank lines are ignored, and tokens are separated by whitespace.

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A non-empty, comment-stripped input line together with its 1-based
/// line number.
#[derive(Debug, Clone, Copy)]
pub struct Line<'a> {
    pub number: usize,
    pub content: &'a str,
}

impl<'a> Line<'a> {
    /// Whitespace-separated tokens of the line.
    pub fn tokens(&self) -> Vec<&'a str> {
        self.content.split_whitespace().collect()
    }

    /// Builds a syntax error located at this line.
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.number, message)
    }
}

/// Iterates over the meaningful lines of `text`.
pub fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        // `label` lines are taken verbatim so that labels may contain `#`
        // (connected sums are labelled `a # b`).
        let is_label = trimmed.split_whitespace().next() == Some("label");
        let content = if is_label {
            trimmed
        } else {
            raw.split('#').next().unwrap_or("").trim()
        };
        (!content.is_empty()).then_some(Line {
            number: i + 1,
            content,
        })
    })
}

/// Parses a signed integer token, accepting an explicit leading `+`.
pub fn parse_int(line: &Line<'_>, token: &str) -> Result<i64> {
    token
        .strip_prefix('+')
        .unwrap_or(token)
        .parse::<i64>()
        .map_err(|_| line.error(format!("expected an integer, found `{token}`")))
}

/// Parses a sequence of integer tokens.
pub fn parse_ints(line: &Line<'_>, tokens: &[&str]) -> Result<Vec<i64>> {
    tokens.iter().map(|t| parse_int(line, t)).collect()
}

/// Parses a matrix written as rows separated by `;`, e.g. `2 0 ; 1 -2`.
///
/// An empty body denotes the `0 × 0` matrix.
pub fn parse_matrix(line: &Line<'_>, body: &str) -> Result<IntMatrix> {
    if body.trim().is_empty() {
        return Ok(IntMatrix::zeros(0));
    }
    let rows = body
        .split(';')
        .map(|row| {
            let toks: Vec<&str> = row.split_whitespace().collect();
            parse_ints(line, &toks)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::from_rows(rows).map_err(|e| line.error(e.to_string()))?;
    if !m.is_square() {
        return Err(line.error("matrix must be square"));
    }
    Ok(m)
}

/// Formats a matrix in the `2 0 ; 1 -2` row syntax.
pub fn format_matrix(m: &IntMatrix) -> String {
    m.rows()
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Formats an integer vector with single spaces.
pub fn format_ints(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

/// Formats a lattice point as `(a,b,...)`.
pub fn format_point(v: &[i64]) -> String {
    format!(
        "({})",
        v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    )
}

/// Parses a lattice point written as `(a,b,...)` (no interior spaces) or
/// `()` for the zero-dimensional lattice.
pub fn parse_point(line: &Line<'_>, token: &str) -> Result<Vec<i64>> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| line.error(format!("expected a lattice point like (0,1), found `{token}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| parse_int(line, t.trim())).collect()
}

/// Key for natural ("human") ordering of identifiers: runs of digits compare
/// numerically, everything else compares as text.
pub fn natural_key(s: &str) -> Vec<NaturalChunk> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        let mut chunk = String::new();
        let digit = c.is_ascii_digit();
        while let Some(&d) = chars.peek() {
            if d.is_ascii_digit() != digit {
                break;
            }
            chunk.push(d);
            chars.next();
        }
        out.push(if digit {
            let trimmed = chunk.trim_start_matches('0');
            NaturalChunk::Number(trimmed.len(), trimmed.to_string(), chunk.len())
        } else {
            NaturalChunk::Text(chunk)
        });
    }
    out
}

/// One chunk of a [`natural_key`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NaturalChunk {
    /// Digits: compared by significant length, then value, then raw length.
    Number(usize, String, usize),
    /// Non-digit text, compared lexicographically.
    Text(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let label: Vec<_> = lines("label a # b\n").map(|l| l.content).collect();
        assert_eq!(label, ["label a # b"]);
        let got: Vec<_> = lines("# header\n\n a b # tail\nc").map(|l| (l.number, l.content)).collect();
        assert_eq!(got, vec![(3, "a b"), (4, "c")]);
    }

    #[test]
    fn matrices_round_trip() {
        let line = Line { number: 1, content: "" };
        let m = parse_matrix(&line, "2 0 ; 1 -2").unwrap();
        assert_eq!(format_matrix(&m), "2 0 ; 1 -2");
        assert_eq!(parse_matrix(&line, "").unwrap().nrows(), 0);
    }

    #[test]
    fn natural_order_compares_numbers_numerically() {
        let mut v = vec!["p10", "p9", "p1", "a2"];
        v.sort_by_key(|s| natural_key(s));
        assert_eq!(v, vec!["a2", "p1", "p9", "p10"]);
    }

    #[test]
    fn points_parse() {
        let line = Line { number: 1, content: "" };
        assert_eq!(parse_point(&line, "(1,-2)").unwrap(), vec![1, -2]);
        assert!(parse_point(&line, "()").unwrap().is_empty());
        assert!(parse_point(&line, "1,2").is_err());
    }
}
