//! The invariant text format.
//!
//! ```text
//! invariant {
//!   label 8_3 R1
//!   h1_rank 2
//!   Q 2 0 ; 1 -2
//!   U 0 1 ; -1 0
//!   class (0,0) count 2 rank 0 gens 112 121
//!   class (-2,0) count 3 rank 1 chi -1
//!   class (0,1) count 3 rank 1..3
//!   total 4
//! }
//! ```
//!
//! Each `class` line gives a lattice point, its generator count, its rank
//! (a number, or `lo..hi` when only bounded), optionally a signed Euler
//! characteristic after `chi`, and optionally generator labels after
//! `gens` (which must come last).

use std::collections::BTreeMap;

use super::{ClassData, GradedInvariant, Rank};
use crate::diagram::FormPair;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::text::{self, format_matrix, format_point, parse_int, parse_matrix, parse_point, Line};

fn parse_rank(line: &Line<'_>, token: &str) -> Result<Rank> {
    let num = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| line.error(format!("expected a rank, found `{token}`")))
    };
    match token.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(line.error(format!("empty rank interval `{token}`")));
            }
            Ok(if lo == hi {
                Rank::Determined(lo)
            } else {
                Rank::Interval(lo, hi)
            })
        }
        None => Ok(Rank::Determined(num(token)?)),
    }
}

fn parse_class(line: &Line<'_>, toks: &[&str]) -> Result<(Vec<i64>, ClassData)> {
    let usage = || line.error("usage: class (a,b,...) count N rank R [chi X] [gens L ...]");
    let pos = parse_point(line, toks.get(1).ok_or_else(usage)?)?;
    let mut count = None;
    let mut rank = None;
    let mut chi = None;
    let mut generators = Vec::new();
    let mut i = 2;
    while i < toks.len() {
        match toks[i] {
            "gens" => {
                generators = toks[i + 1..].iter().map(|s| s.to_string()).collect();
                break;
            }
            key @ ("count" | "rank" | "chi") => {
                let v = toks.get(i + 1).ok_or_else(usage)?;
                match key {
                    "count" => {
                        count = Some(
                            v.parse::<u64>()
                                .map_err(|_| line.error(format!("expected a count, found `{v}`")))?,
                        )
                    }
                    "rank" => rank = Some(parse_rank(line, v)?),
                    _ => chi = Some(parse_int(line, v)?),
                }
                i += 2;
            }
            other => return Err(line.error(format!("unknown class field `{other}`"))),
        }
    }
    let count = count.ok_or_else(usage)?;
    let rank = rank.ok_or_else(usage)?;
    Ok((
        pos,
        ClassData {
            count,
            chi_mod2: (count % 2) as u8,
            chi_signed: chi,
            rank,
            generators,
        },
    ))
}

/// Parses one `invariant { ... }` block.
pub fn parse_invariant(input: &str) -> Result<GradedInvariant> {
    let mut lines = text::lines(input);
    let first = lines
        .next()
        .ok_or_else(|| Error::Semantic("empty input: expected `invariant {`".into()))?;
    if first.tokens() != ["invariant", "{"] {
        return Err(first.error("expected `invariant {`"));
    }
    let mut label = String::new();
    let mut h1_rank = None;
    let mut q = None;
    let mut u = None;
    let mut total = None;
    let mut classes = BTreeMap::new();
    let mut closed = false;
    for line in lines.by_ref() {
        let toks = line.tokens();
        match toks[0] {
            "}" if toks.len() == 1 => {
                closed = true;
                break;
            }
            "label" => label = line.content["label".len()..].trim().to_string(),
            "h1_rank" => {
                let n = toks
                    .get(1)
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|_| toks.len() == 2)
                    .ok_or_else(|| line.error("usage: h1_rank N"))?;
                h1_rank = Some(n);
            }
            "Q" | "U" => {
                let m = parse_matrix(&line, &line.content[1..])?;
                if toks[0] == "Q" {
                    q = Some(m);
                } else {
                    u = Some(m);
                }
            }
            "class" => {
                let (pos, class) = parse_class(&line, &toks)?;
                if classes.insert(pos.clone(), class).is_some() {
                    return Err(line.error(format!("class {} given twice", format_point(&pos))));
                }
            }
            "total" => {
                let t = toks
                    .get(1)
                    .and_then(|t| t.parse::<u64>().ok())
                    .filter(|_| toks.len() == 2)
                    .ok_or_else(|| line.error("usage: total N"))?;
                total = Some(t);
            }
            other => return Err(line.error(format!("unknown keyword `{other}`"))),
        }
    }
    if !closed {
        return Err(Error::Semantic("unterminated `invariant {` block".into()));
    }
    if let Some(extra) = lines.next() {
        return Err(extra.error("unexpected content after the invariant block"));
    }
    let h1_rank = h1_rank.ok_or_else(|| Error::Semantic("missing `h1_rank` line".into()))?;
    let q = q.unwrap_or_else(|| IntMatrix::zeros(0));
    let u = u.unwrap_or_else(|| IntMatrix::zeros(q.nrows()));
    if q.nrows() != h1_rank || u.nrows() != h1_rank {
        return Err(Error::Dimension(format!(
            "forms must be {h1_rank}x{h1_rank}, got Q {}x{} and U {}x{}",
            q.nrows(),
            q.ncols(),
            u.nrows(),
            u.ncols()
        )));
    }
    if let Some(bad) = classes.keys().find(|p| p.len() != h1_rank) {
        return Err(Error::Dimension(format!(
            "class {} is not a point of a rank-{h1_rank} lattice",
            format_point(bad)
        )));
    }
    let total_rank = total.ok_or_else(|| Error::Semantic("missing `total` line".into()))?;
    Ok(GradedInvariant {
        label,
        h1_rank,
        forms: FormPair { q, u },
        classes,
        total_rank,
    })
}

/// Serializes an invariant; `parse_invariant` inverts it exactly.
pub fn serialize_invariant(inv: &GradedInvariant) -> String {
    let mut out = String::from("invariant {\n");
    if !inv.label.is_empty() {
        out.push_str(&format!("  label {}\n", inv.label));
    }
    out.push_str(&format!("  h1_rank {}\n", inv.h1_rank));
    out.push_str(&format!("  Q {}\n", format_matrix(&inv.forms.q)).replace(" \n", "\n"));
    out.push_str(&format!("  U {}\n", format_matrix(&inv.forms.u)).replace(" \n", "\n"));
    for (pos, c) in &inv.classes {
        let mut line = format!("  class {} count {} rank {}", format_point(pos), c.count, c.rank);
        if let Some(chi) = c.chi_signed {
            line.push_str(&format!(" chi {chi}"));
        }
        if !c.generators.is_empty() {
            line.push_str(" gens ");
            line.push_str(&c.generators.join(" "));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("  total {}\n}}\n", inv.total_rank));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
invariant {
  label sample
  h1_rank 2
  Q 2 0 ; 1 -2
  U 0 1 ; -1 0
  class (0,0) count 2 rank 0 gens 112 121
  class (-2,0) count 3 rank 1 chi -1
  class (0,1) count 3 rank 1..3
  total 4
}
";

    #[test]
    fn parses_and_round_trips() {
        let inv = parse_invariant(SAMPLE).unwrap();
        assert_eq!(inv.classes.len(), 3);
        assert_eq!(inv.classes[&vec![0, 1]].rank, Rank::Interval(1, 3));
        assert_eq!(inv.classes[&vec![-2, 0]].chi_signed, Some(-1));
        assert_eq!(inv.classes[&vec![0, 0]].generators, vec!["112", "121"]);
        assert_eq!(parse_invariant(&serialize_invariant(&inv)).unwrap(), inv);
    }

    #[test]
    fn unit_round_trips() {
        let unit = GradedInvariant::unit();
        assert_eq!(parse_invariant(&serialize_invariant(&unit)).unwrap(), unit);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = SAMPLE.replace("rank 1..3", "rank 3..1");
        assert!(matches!(parse_invariant(&bad), Err(Error::Syntax { line: 8, .. })));
        let bad = SAMPLE.replace("count 3 rank 1 chi", "count x rank 1 chi");
        assert!(matches!(parse_invariant(&bad), Err(Error::Syntax { line: 7, .. })));
    }

    #[test]
    fn structural_errors() {
        assert!(parse_invariant(&SAMPLE.replace("}\n", "")).is_err());
        assert!(parse_invariant(&SAMPLE.replace("(0,1)", "(0,1,2)")).is_err());
        assert!(parse_invariant(&SAMPLE.replace("  total 4\n", "")).is_err());
    }
}
