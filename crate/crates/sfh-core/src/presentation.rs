//! Disk-with-bands presentations of Seifert surfaces.
//!
//! A genus-`g` Seifert surface is a disk with `2g` bands attached. The
//! presentation records the counterclockwise order of the band ends along
//! the disk boundary, the framing of every band (full right-handed twists
//! minus full left-handed twists), and the crossings of the projected band
//! cores.
//!
//! # Sign conventions
//!
//! The Seifert matrix is `Q_ij = lk(a_i, a_j⁺)`, where `a_i` is the core of
//! band `i` closed up through the disk and `⁺` is the push-off along the
//! positive normal. Counting only crossings where `a_i` passes over
//! `a_j⁺`, the disk contributes nothing (the push-off lies above the disk),
//! so:
//!
//! * `Q_ii` is the framing of band `i` (self-crossings are assumed to be
//!   absorbed into the framing, which is the Seifert framing of the band);
//! * a crossing where band `i` passes over band `j ≠ i` with sign `s` adds
//!   `s` to `Q_ij`.
//!
//! The intersection matrix comes from the boundary word alone. Rotate the
//! word to start at `e_i⁺`; bands `i` and `j` are interleaved when exactly
//! one end of band `j` lies strictly between `e_i⁺` and `e_i⁻`, and then
//! `U_ij = +1` if that end is `e_j⁺` and `−1` otherwise.
//!
//! With these conventions the two plumbings of a `+2` and a `−2` band give
//! exactly `[[2,0],[1,−2]]` and `[[2,−1],[0,−2]]` with
//! `U = [[0,1],[−1,0]]`, and every geometrically consistent presentation
//! satisfies `Qᵀ − Q = U`. That relation is enforced when parsing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::FormPair;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::text::{self, parse_int, parse_ints};

/// One end of a band: `e_i⁺` or `e_i⁻` (bands are numbered from 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandEnd {
    pub band: usize,
    pub plus: bool,
}

impl fmt::Display for BandEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}", self.band, if self.plus { '+' } else { '-' })
    }
}

/// A transverse double point of two projected band cores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    /// `+1` or `−1`.
    pub sign: i8,
}

/// The plumbing shorthands of the presentation format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shorthand {
    /// `plumb p q`: band 2 crosses over band 1 positively.
    Plumb(i64, i64),
    /// `plumb-dual p q`: band 1 crosses over band 2 negatively.
    PlumbDual(i64, i64),
}

/// A disk-with-bands presentation of a Seifert surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandPresentation {
    pub label: String,
    pub genus: usize,
    /// Counterclockwise order of the band ends along the disk boundary.
    pub boundary_word: Vec<BandEnd>,
    pub framings: Vec<i64>,
    pub crossings: Vec<Crossing>,
    /// Set when the presentation was written with a plumbing shorthand, so
    /// that serialization reproduces the shorthand.
    pub shorthand: Option<Shorthand>,
}

impl BandPresentation {
    /// Number of bands, `2g`.
    pub fn band_count(&self) -> usize {
        2 * self.genus
    }

    /// Expands a plumbing shorthand into a full presentation.
    pub fn from_shorthand(s: Shorthand) -> Self {
        let word = vec![
            BandEnd { band: 1, plus: true },
            BandEnd { band: 2, plus: true },
            BandEnd { band: 1, plus: false },
            BandEnd { band: 2, plus: false },
        ];
        let (p, q, crossing) = match s {
            Shorthand::Plumb(p, q) => (p, q, Crossing { over: 2, under: 1, sign: 1 }),
            Shorthand::PlumbDual(p, q) => (p, q, Crossing { over: 1, under: 2, sign: -1 }),
        };
        BandPresentation {
            label: String::new(),
            genus: 1,
            boundary_word: word,
            framings: vec![p, q],
            crossings: vec![crossing],
            shorthand: Some(s),
        }
    }

    /// Position of every band end in the boundary word, indexed by
    /// `(band − 1, plus)`.
    pub(crate) fn end_positions(&self) -> Vec<[usize; 2]> {
        let mut pos = vec![[usize::MAX; 2]; self.band_count()];
        for (k, e) in self.boundary_word.iter().enumerate() {
            pos[e.band - 1][usize::from(e.plus)] = k;
        }
        pos
    }

    /// Checks the semantic rules of the format.
    pub fn check(&self) -> Result<()> {
        let n = self.band_count();
        if self.genus == 0 {
            return Err(Error::Semantic("genus must be positive".into()));
        }
        if self.framings.len() != n {
            return Err(Error::Semantic(format!(
                "expected {n} framings, found {}",
                self.framings.len()
            )));
        }
        let mut seen = vec![[false; 2]; n];
        for e in &self.boundary_word {
            if e.band == 0 || e.band > n {
                return Err(Error::Semantic(format!("band end {e} refers to a missing band")));
            }
            let slot = &mut seen[e.band - 1][usize::from(e.plus)];
            if *slot {
                return Err(Error::Semantic(format!("band end {e} is listed twice")));
            }
            *slot = true;
        }
        for (i, s) in seen.iter().enumerate() {
            for plus in [true, false] {
                if !s[usize::from(plus)] {
                    let e = BandEnd { band: i + 1, plus };
                    return Err(Error::Semantic(format!("band end {e} is missing")));
                }
            }
        }
        for c in &self.crossings {
            if c.over == 0 || c.over > n || c.under == 0 || c.under > n {
                return Err(Error::Semantic(format!(
                    "crossing over={} under={} refers to a missing band",
                    c.over, c.under
                )));
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Semantic("crossing sign must be +1 or -1".into()));
            }
        }
        let q = seifert_matrix(self);
        let u = intersection_matrix(self);
        if q.transpose().sub(&q)? != u {
            return Err(Error::Semantic(format!(
                "crossing data is inconsistent with the boundary word: Q = {q} but U = {u}"
            )));
        }
        Ok(())
    }
}

/// Parses a presentation from its text form.
///
/// ```text
/// label trefoil
/// genus 1
/// boundary e1+ e2+ e1- e2-
/// framings 1 1
/// crossing over=2 under=1 sign=+1
/// ```
///
/// or a single shorthand line `plumb p q` / `plumb-dual p q`.
pub fn parse_presentation(input: &str) -> Result<BandPresentation> {
    let mut label = String::new();
    let mut genus = None;
    let mut word = None;
    let mut framings = None;
    let mut crossings = Vec::new();
    let mut shorthand = None;
    for line in text::lines(input) {
        let toks = line.tokens();
        match toks[0] {
            "label" => label = line.content["label".len()..].trim().to_string(),
            "genus" => {
                if toks.len() != 2 {
                    return Err(line.error("usage: genus G"));
                }
                let g = toks[1]
                    .parse::<usize>()
                    .map_err(|_| line.error("genus must be a positive integer"))?;
                genus = Some(g);
            }
            "boundary" => {
                let ends = toks[1..]
                    .iter()
                    .map(|t| parse_end(t).ok_or_else(|| line.error(format!("bad band end `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                word = Some(ends);
            }
            "framings" => framings = Some(parse_ints(&line, &toks[1..])?),
            "crossing" => {
                let (mut over, mut under, mut sign) = (None, None, None);
                for t in &toks[1..] {
                    let (k, v) = t
                        .split_once('=')
                        .ok_or_else(|| line.error(format!("expected key=value, found `{t}`")))?;
                    let v = parse_int(&line, v)?;
                    match k {
                        "over" => over = Some(v),
                        "under" => under = Some(v),
                        "sign" => sign = Some(v),
                        _ => return Err(line.error(format!("unknown crossing field `{k}`"))),
                    }
                }
                match (over, under, sign) {
                    (Some(o), Some(u), Some(s)) if o > 0 && u > 0 && (s == 1 || s == -1) => {
                        crossings.push(Crossing {
                            over: o as usize,
                            under: u as usize,
                            sign: s as i8,
                        })
                    }
                    _ => return Err(line.error("usage: crossing over=I under=J sign=±1")),
                }
            }
            "plumb" | "plumb-dual" => {
                if toks.len() != 3 {
                    return Err(line.error(format!("usage: {} P Q", toks[0])));
                }
                let v = parse_ints(&line, &toks[1..])?;
                shorthand = Some(if toks[0] == "plumb" {
                    Shorthand::Plumb(v[0], v[1])
                } else {
                    Shorthand::PlumbDual(v[0], v[1])
                });
            }
            other => return Err(line.error(format!("unknown keyword `{other}`"))),
        }
    }
    let bp = if let Some(s) = shorthand {
        if genus.is_some() || word.is_some() || framings.is_some() || !crossings.is_empty() {
            return Err(Error::Semantic("a plumbing shorthand cannot be combined with explicit fields".into()));
        }
        BandPresentation {
            label,
            ..BandPresentation::from_shorthand(s)
        }
    } else {
        BandPresentation {
            label,
            genus: genus.ok_or_else(|| Error::Semantic("missing `genus` line".into()))?,
            boundary_word: word.ok_or_else(|| Error::Semantic("missing `boundary` line".into()))?,
            framings: framings.ok_or_else(|| Error::Semantic("missing `framings` line".into()))?,
            crossings,
            shorthand: None,
        }
    };
    bp.check()?;
    Ok(bp)
}

fn parse_end(t: &str) -> Option<BandEnd> {
    let rest = t.strip_prefix('e')?;
    let (num, plus) = if let Some(n) = rest.strip_suffix('+') {
        (n, true)
    } else {
        (rest.strip_suffix('-')?, false)
    };
    Some(BandEnd {
        band: num.parse().ok()?,
        plus,
    })
}

/// Serializes a presentation; the output parses back to an equal value.
pub fn serialize_presentation(bp: &BandPresentation) -> String {
    let mut out = String::new();
    if !bp.label.is_empty() {
        out.push_str(&format!("label {}\n", bp.label));
    }
    if let Some(s) = bp.shorthand {
        match s {
            Shorthand::Plumb(p, q) => out.push_str(&format!("plumb {p} {q}\n")),
            Shorthand::PlumbDual(p, q) => out.push_str(&format!("plumb-dual {p} {q}\n")),
        }
        return out;
    }
    out.push_str(&format!("genus {}\n", bp.genus));
    let word: Vec<String> = bp.boundary_word.iter().map(BandEnd::to_string).collect();
    out.push_str(&format!("boundary {}\n", word.join(" ")));
    out.push_str(&format!("framings {}\n", text::format_ints(&bp.framings)));
    for c in &bp.crossings {
        out.push_str(&format!(
            "crossing over={} under={} sign={}\n",
            c.over,
            c.under,
            if c.sign > 0 { "+1" } else { "-1" }
        ));
    }
    out
}

/// The Seifert matrix `Q_ij = lk(a_i, a_j⁺)` (see the module docs for the
/// convention).
pub fn seifert_matrix(bp: &BandPresentation) -> IntMatrix {
    let n = bp.band_count();
    let mut q = IntMatrix::zeros(n);
    for (i, &f) in bp.framings.iter().enumerate().take(n) {
        q.set(i, i, f);
    }
    for c in &bp.crossings {
        if c.over != c.under && c.over <= n && c.under <= n {
            let (i, j) = (c.over - 1, c.under - 1);
            q.set(i, j, q.get(i, j) + i64::from(c.sign));
        }
    }
    q
}

/// The intersection matrix of the band cores, read off the boundary word.
pub fn intersection_matrix(bp: &BandPresentation) -> IntMatrix {
    let n = bp.band_count();
    let len = bp.boundary_word.len();
    let pos = bp.end_positions();
    let mut u = IntMatrix::zeros(n);
    if pos.iter().flatten().any(|&p| p == usize::MAX) {
        return u;
    }
    // Offset of a word position measured counterclockwise from `start`.
    let offset = |start: usize, p: usize| (p + len - start) % len;
    for i in 0..n {
        let start = pos[i][1];
        let stop = offset(start, pos[i][0]);
        for j in 0..n {
            if i == j {
                continue;
            }
            let jp = offset(start, pos[j][1]) < stop;
            let jm = offset(start, pos[j][0]) < stop;
            if jp != jm {
                u.set(i, j, if jp { 1 } else { -1 });
            }
        }
    }
    u
}

/// Seifert and intersection forms of a presentation.
pub fn forms(bp: &BandPresentation) -> FormPair {
    FormPair {
        q: seifert_matrix(bp),
        u: intersection_matrix(bp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plumbings_give_the_published_matrices() {
        let r1 = parse_presentation("plumb 2 -2").unwrap();
        let r2 = parse_presentation("plumb-dual 2 -2").unwrap();
        assert_eq!(seifert_matrix(&r1).to_string(), "[[2,0],[1,-2]]");
        assert_eq!(seifert_matrix(&r2).to_string(), "[[2,-1],[0,-2]]");
        assert_eq!(intersection_matrix(&r1).to_string(), "[[0,1],[-1,0]]");
        assert_eq!(intersection_matrix(&r2).to_string(), "[[0,1],[-1,0]]");
    }

    #[test]
    fn repeated_band_end_is_named() {
        let err = parse_presentation("genus 1\nboundary e1+ e1+ e2+ e2-\nframings 0 0\n").unwrap_err();
        assert_eq!(err, Error::Semantic("band end e1+ is listed twice".into()));
    }

    #[test]
    fn missing_band_end_is_named() {
        let err = parse_presentation("genus 1\nboundary e1+ e2+ e2-\nframings 0 0\n").unwrap_err();
        assert_eq!(err, Error::Semantic("band end e1- is missing".into()));
    }

    #[test]
    fn non_interleaved_bands_without_crossings_have_zero_forms() {
        let bp = parse_presentation("genus 1\nboundary e1+ e1- e2+ e2-\nframings 0 0\n").unwrap();
        assert_eq!(intersection_matrix(&bp), IntMatrix::zeros(2));
        assert_eq!(seifert_matrix(&bp), IntMatrix::zeros(2));
    }

    #[test]
    fn inconsistent_crossings_are_rejected() {
        let text = "genus 1\nboundary e1+ e1- e2+ e2-\nframings 0 0\ncrossing over=1 under=2 sign=+1\n";
        assert!(matches!(parse_presentation(text), Err(Error::Semantic(_))));
    }

    #[test]
    fn explicit_presentations_round_trip() {
        let text = "label trefoil\ngenus 1\nboundary e1+ e2+ e1- e2-\nframings 1 1\ncrossing over=2 under=1 sign=+1\n";
        let bp = parse_presentation(text).unwrap();
        assert_eq!(serialize_presentation(&bp), text);
        assert_eq!(parse_presentation(&serialize_presentation(&bp)).unwrap(), bp);
    }

    #[test]
    fn shorthand_round_trips_as_shorthand() {
        let bp = parse_presentation("# R1\nplumb 2 -2 # trailing\n").unwrap();
        assert_eq!(serialize_presentation(&bp), "plumb 2 -2\n");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_presentation("genus 1\nboundary e1+ x e1- e2-\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
    }
}
