//! The diagram text format.
//!
//! ```text
//! label 8_3 R1 decomposed
//! h1_rank 2
//! quasipolygon                 # only for surface diagrams
//! alpha a1 = 1.1 1.2 1.3
//! beta b1 = 1.3 2.2 3.2
//! point 1.1 sign +1 inP        # optional attributes
//! arc a1 1.1 1.2 = 0 1         # arcs not listed have weight zero
//! Q = 2 0 ; 1 -2
//! U = 0 1 ; -1 0
//! ```

use std::collections::{BTreeMap, HashSet};

use super::{AnnotatedDiagram, Curve, FormPair, PointAttrs};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::text::{self, format_ints, format_matrix, parse_int, parse_ints, parse_matrix, Line};

/// Parses a diagram from its text form.
///
/// Syntax problems are reported with their line number. Structural
/// invariants (balance, zero weight sums, ...) are not checked here; use
/// [`validate_diagram`](super::validate_diagram).
pub fn parse_diagram(input: &str) -> Result<AnnotatedDiagram> {
    let mut d = AnnotatedDiagram::empty("", 0);
    let mut h1_rank: Option<usize> = None;
    let mut q: Option<IntMatrix> = None;
    let mut u: Option<IntMatrix> = None;
    let mut attrs: Vec<(Line<'_>, String, PointAttrs)> = Vec::new();
    let mut arcs: Vec<(Line<'_>, String, String, String, Vec<i64>)> = Vec::new();

    for line in text::lines(input) {
        let toks = line.tokens();
        match toks[0] {
            "label" => {
                d.label = line.content["label".len()..].trim().to_string();
            }
            "h1_rank" => {
                if toks.len() != 2 {
                    return Err(line.error("usage: h1_rank N"));
                }
                let n = toks[1]
                    .parse::<usize>()
                    .map_err(|_| line.error("h1_rank must be a nonnegative integer"))?;
                h1_rank = Some(n);
            }
            "quasipolygon" => {
                if toks.len() != 1 {
                    return Err(line.error("`quasipolygon` takes no arguments"));
                }
                d.quasipolygon = true;
            }
            "alpha" | "beta" => {
                if toks.len() < 3 || toks[2] != "=" {
                    return Err(line.error(format!("usage: {} NAME = POINT ...", toks[0])));
                }
                let curve = Curve {
                    name: toks[1].to_string(),
                    points: toks[3..].iter().map(|s| s.to_string()).collect(),
                    weights: Vec::new(),
                };
                if toks[0] == "alpha" {
                    d.alpha.push(curve);
                } else {
                    d.beta.push(curve);
                }
            }
            "point" => {
                if toks.len() < 2 {
                    return Err(line.error("usage: point NAME [sign ±1] [inP]"));
                }
                let mut a = PointAttrs::default();
                let mut i = 2;
                while i < toks.len() {
                    match toks[i] {
                        "inP" => a.in_quasipolygon = true,
                        "sign" => {
                            let s = toks
                                .get(i + 1)
                                .ok_or_else(|| line.error("`sign` needs a value"))?;
                            let v = parse_int(&line, s)?;
                            if v != 1 && v != -1 {
                                return Err(line.error("sign must be +1 or -1"));
                            }
                            a.sign = Some(v as i8);
                            i += 1;
                        }
                        other => return Err(line.error(format!("unknown point attribute `{other}`"))),
                    }
                    i += 1;
                }
                attrs.push((line, toks[1].to_string(), a));
            }
            "arc" => {
                if toks.len() < 5 || toks[4] != "=" {
                    return Err(line.error("usage: arc CURVE FROM TO = W1 W2 ..."));
                }
                let w = parse_ints(&line, &toks[5..])?;
                arcs.push((line, toks[1].into(), toks[2].into(), toks[3].into(), w));
            }
            "Q" | "U" => {
                let body = line.content[1..].trim_start();
                let body = body
                    .strip_prefix('=')
                    .ok_or_else(|| line.error(format!("usage: {} = ROW ; ROW", toks[0])))?;
                let m = parse_matrix(&line, body)?;
                if toks[0] == "Q" {
                    q = Some(m);
                } else {
                    u = Some(m);
                }
            }
            other => return Err(line.error(format!("unknown keyword `{other}`"))),
        }
    }

    let n = h1_rank.ok_or_else(|| Error::Semantic("missing `h1_rank` line".into()))?;
    d.h1_rank = n;
    d.forms = match (q, u) {
        (Some(q), Some(u)) => Some(FormPair { q, u }),
        (None, None) => None,
        _ => return Err(Error::Semantic("Q and U must be given together".into())),
    };
    for c in d.alpha.iter_mut().chain(d.beta.iter_mut()) {
        c.weights = vec![vec![0; n]; c.points.len()];
    }

    let mut points: BTreeMap<String, PointAttrs> = BTreeMap::new();
    for c in d.alpha.iter().chain(&d.beta) {
        for p in &c.points {
            points.entry(p.clone()).or_default();
        }
    }
    for (line, name, a) in attrs {
        match points.get_mut(&name) {
            Some(slot) => *slot = a,
            None => return Err(line.error(format!("point {name} is not on any curve"))),
        }
    }
    d.points = points;

    let mut seen = HashSet::new();
    for (line, curve, from, to, w) in arcs {
        if w.len() != n {
            return Err(line.error(format!("arc weight must have {n} entries")));
        }
        let c = d
            .alpha
            .iter_mut()
            .chain(d.beta.iter_mut())
            .find(|c| c.name == curve)
            .ok_or_else(|| line.error(format!("unknown curve `{curve}`")))?;
        let len = c.points.len();
        let slot = (0..len)
            .find(|&i| c.points[i] == from && c.points[(i + 1) % len] == to)
            .ok_or_else(|| line.error(format!("{from} -> {to} is not an arc of curve {curve}")))?;
        if !seen.insert((curve.clone(), slot)) {
            return Err(line.error(format!("arc {from} -> {to} on {curve} given twice")));
        }
        c.weights[slot] = w;
    }
    Ok(d)
}

/// Serializes a diagram to its text form.
///
/// Only non-default point attributes and nonzero arc weights are written,
/// so `parse_diagram(&serialize_diagram(d)) == d` for every diagram whose
/// weights have length `h1_rank`.
pub fn serialize_diagram(d: &AnnotatedDiagram) -> String {
    let mut out = String::new();
    if !d.label.is_empty() {
        out.push_str(&format!("label {}\n", d.label));
    }
    out.push_str(&format!("h1_rank {}\n", d.h1_rank));
    if d.quasipolygon {
        out.push_str("quasipolygon\n");
    }
    for (kw, curves) in [("alpha", &d.alpha), ("beta", &d.beta)] {
        for c in curves {
            out.push_str(&format!("{kw} {} = {}\n", c.name, c.points.join(" ")).replace(" \n", "\n"));
        }
    }
    for (p, a) in &d.points {
        if *a == PointAttrs::default() {
            continue;
        }
        let mut line = format!("point {p}");
        if let Some(s) = a.sign {
            line.push_str(if s > 0 { " sign +1" } else { " sign -1" });
        }
        if a.in_quasipolygon {
            line.push_str(" inP");
        }
        out.push_str(&line);
        out.push('\n');
    }
    for c in d.alpha.iter().chain(&d.beta) {
        let n = c.points.len();
        for (i, w) in c.weights.iter().enumerate() {
            if w.iter().any(|&x| x != 0) {
                out.push_str(&format!(
                    "arc {} {} {} = {}\n",
                    c.name,
                    c.points[i],
                    c.points[(i + 1) % n],
                    format_ints(w)
                ));
            }
        }
    }
    if let Some(f) = &d.forms {
        out.push_str(&format!("Q = {}\n", format_matrix(&f.q)));
        out.push_str(&format!("U = {}\n", format_matrix(&f.u)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
label tiny
h1_rank 1
alpha a1 = p q
beta b1 = p
beta b2 = q
alpha a2 =
point p sign +1
point q sign -1 inP
arc a1 p q = 1
arc a1 q p = -1
Q = 1
U = 0
";

    #[test]
    fn parses_and_round_trips() {
        let d = parse_diagram(SMALL).unwrap();
        assert_eq!(d.alpha.len(), 2);
        assert_eq!(d.alpha[0].weights, vec![vec![1], vec![-1]]);
        assert!(d.points["q"].in_quasipolygon);
        let again = parse_diagram(&serialize_diagram(&d)).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn rejects_non_arcs_with_line_numbers() {
        let bad = "h1_rank 1\nalpha a1 = p q r\narc a1 p r = 1\n";
        match parse_diagram(bad) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_keywords() {
        assert!(matches!(parse_diagram("h1_rank 0\nfoo\n"), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn requires_h1_rank() {
        assert!(matches!(parse_diagram("alpha a = p\n"), Err(Error::Semantic(_))));
    }
}
