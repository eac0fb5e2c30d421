//! Structural validation of diagrams.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::AnnotatedDiagram;
use crate::text::format_ints;

/// One violated diagram invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Different numbers of α and β curves.
    Unbalanced { alpha: usize, beta: usize },
    /// A point that does not occur exactly once among the α curves (or the
    /// β curves).
    PointMultiplicity {
        point: String,
        family: &'static str,
        occurrences: usize,
    },
    /// A point that occurs on a curve but has no attribute record.
    UndeclaredPoint { point: String },
    /// An arc weight whose length differs from `h1_rank`.
    WeightDimension { curve: String, arc: usize, len: usize },
    /// A curve whose arc count differs from its point count.
    ArcCount { curve: String, points: usize, arcs: usize },
    /// A curve whose cyclic weight sum is not zero.
    NonzeroCurveSum { curve: String, sum: Vec<i64> },
    /// Some but not all points carry a sign.
    PartialSigns { unsigned: Vec<String> },
    /// A sign other than `±1`.
    BadSign { point: String, sign: i8 },
    /// Forms whose size differs from `h1_rank`, or a non-antisymmetric `U`.
    BadForms { message: String },
    /// Two curves with the same name.
    DuplicateCurve { curve: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unbalanced { alpha, beta } => {
                write!(f, "unbalanced: {alpha} alpha curves vs {beta} beta curves")
            }
            Violation::PointMultiplicity {
                point,
                family,
                occurrences,
            } => write!(
                f,
                "point {point} occurs {occurrences} times among the {family} curves (expected 1)"
            ),
            Violation::UndeclaredPoint { point } => {
                write!(f, "point {point} has no attribute record")
            }
            Violation::WeightDimension { curve, arc, len } => {
                write!(f, "curve {curve}: arc {arc} has weight of length {len}")
            }
            Violation::ArcCount {
                curve,
                points,
                arcs,
            } => write!(f, "curve {curve}: {points} points but {arcs} arc weights"),
            Violation::NonzeroCurveSum { curve, sum } => {
                write!(f, "curve {curve}: cyclic weight sum is ({}) instead of zero", format_ints(sum))
            }
            Violation::PartialSigns { unsigned } => {
                write!(f, "some points carry signs but these do not: {}", unsigned.join(" "))
            }
            Violation::BadSign { point, sign } => write!(f, "point {point}: sign {sign} is not ±1"),
            Violation::BadForms { message } => write!(f, "forms: {message}"),
            Violation::DuplicateCurve { curve } => write!(f, "curve name {curve} is used twice"),
        }
    }
}

/// The outcome of [`validate_diagram`]: empty iff every invariant holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Returns `true` when no invariant is violated.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a diagram and lists the violations.
///
/// Violations are data, not failures: the function never errors. The
/// invariants are balance (`|α| = |β|`), each point on exactly one α and
/// one β curve, per-arc weights of length `h1_rank`, zero cyclic weight sum
/// on every curve, all-or-nothing signs, and well-shaped forms.
pub fn validate_diagram(d: &AnnotatedDiagram) -> ValidationReport {
    let mut violations = Vec::new();
    if d.alpha.len() != d.beta.len() {
        violations.push(Violation::Unbalanced {
            alpha: d.alpha.len(),
            beta: d.beta.len(),
        });
    }

    let mut names = BTreeMap::new();
    for c in d.alpha.iter().chain(&d.beta) {
        *names.entry(c.name.as_str()).or_insert(0usize) += 1;
    }
    for (name, n) in names {
        if n > 1 {
            violations.push(Violation::DuplicateCurve {
                curve: name.to_string(),
            });
        }
    }

    for (family, curves) in [("alpha", &d.alpha), ("beta", &d.beta)] {
        let mut counts: BTreeMap<&str, usize> = d.points.keys().map(|p| (p.as_str(), 0)).collect();
        for c in curves.iter() {
            for p in &c.points {
                *counts.entry(p.as_str()).or_insert(0) += 1;
            }
        }
        for (p, n) in counts {
            if n != 1 {
                violations.push(Violation::PointMultiplicity {
                    point: p.to_string(),
                    family,
                    occurrences: n,
                });
            }
        }
    }

    for c in d.alpha.iter().chain(&d.beta) {
        for p in &c.points {
            if !d.points.contains_key(p) {
                violations.push(Violation::UndeclaredPoint { point: p.clone() });
            }
        }
        if c.weights.len() != c.points.len() {
            violations.push(Violation::ArcCount {
                curve: c.name.clone(),
                points: c.points.len(),
                arcs: c.weights.len(),
            });
        }
        let mut dims_ok = true;
        for (i, w) in c.weights.iter().enumerate() {
            if w.len() != d.h1_rank {
                dims_ok = false;
                violations.push(Violation::WeightDimension {
                    curve: c.name.clone(),
                    arc: i,
                    len: w.len(),
                });
            }
        }
        if dims_ok {
            let sum = c.weight_sum(d.h1_rank);
            if sum.iter().any(|&x| x != 0) {
                violations.push(Violation::NonzeroCurveSum {
                    curve: c.name.clone(),
                    sum,
                });
            }
        }
    }

    let signed = d.points.values().filter(|a| a.sign.is_some()).count();
    if signed > 0 && signed < d.points.len() {
        violations.push(Violation::PartialSigns {
            unsigned: d
                .points
                .iter()
                .filter(|(_, a)| a.sign.is_none())
                .map(|(p, _)| p.clone())
                .collect(),
        });
    }
    for (p, a) in &d.points {
        if let Some(s) = a.sign {
            if s != 1 && s != -1 {
                violations.push(Violation::BadSign {
                    point: p.clone(),
                    sign: s,
                });
            }
        }
    }

    if let Some(forms) = &d.forms {
        let n = d.h1_rank;
        if forms.q.nrows() != n || !forms.q.is_square() || forms.u.nrows() != n || !forms.u.is_square() {
            violations.push(Violation::BadForms {
                message: format!("Q and U must be {n}x{n}"),
            });
        } else if !forms.u.is_antisymmetric() {
            violations.push(Violation::BadForms {
                message: "U is not antisymmetric with zero diagonal".into(),
            });
        }
    }

    ValidationReport { violations }
}
