//! Combinatorial balanced sutured Heegaard diagrams.
//!
//! A diagram is stored abstractly: every α and β curve is a cyclic sequence
//! of intersection-point identifiers, and every arc between consecutive
//! points carries a weight vector in `ℤ^{h1_rank}`, the class of that arc
//! (pushed into its handlebody) in `H₁` of the surface complement. The
//! ambient Heegaard surface is never triangulated: generators, difference
//! classes and the Spin^c partition only need intersection order and arc
//! weights.

mod format;
mod generators;
mod validate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::IntMatrix;

pub use format::{parse_diagram, serialize_diagram};
pub use generators::{
    difference_class, difference_class_along, enumerate_generators, outer_restrict,
    spinc_partition, SpincPartition, Walk,
};
pub use validate::{validate_diagram, ValidationReport, Violation};

pub(crate) use generators::DiagramIndex;

/// A vector in `ℤ^{h1_rank}`: a difference class or a lattice position.
pub type LatticeVector = Vec<i64>;

/// Seifert form `Q` and intersection form `U` on a fixed `H₁` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormPair {
    /// Seifert form, `Q_ij = lk(a_i, a_j⁺)`.
    pub q: IntMatrix,
    /// Intersection form; antisymmetric with zero diagonal.
    pub u: IntMatrix,
}

impl FormPair {
    /// The forms on the zero-dimensional lattice.
    pub fn empty() -> Self {
        FormPair {
            q: IntMatrix::zeros(0),
            u: IntMatrix::zeros(0),
        }
    }

    /// Size of the basis.
    pub fn rank(&self) -> usize {
        self.q.nrows()
    }

    /// Block-diagonal sum of two form pairs.
    pub fn direct_sum(&self, other: &FormPair) -> FormPair {
        FormPair {
            q: self.q.direct_sum(&other.q),
            u: self.u.direct_sum(&other.u),
        }
    }
}

/// Per-point attributes of an intersection point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointAttrs {
    /// Whether the point lies inside the quasipolygon `P`.
    pub in_quasipolygon: bool,
    /// Optional local intersection sign, `+1` or `-1`.
    pub sign: Option<i8>,
}

/// One α or β curve: a cyclic sequence of points with per-arc weights.
///
/// `weights[i]` is the class of the arc running from `points[i]` to
/// `points[(i + 1) % n]` in the curve's orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub points: Vec<String>,
    pub weights: Vec<LatticeVector>,
}

impl Curve {
    /// A curve with all arc weights zero.
    pub fn new(name: impl Into<String>, points: Vec<String>, h1_rank: usize) -> Self {
        let weights = vec![vec![0; h1_rank]; points.len()];
        Curve {
            name: name.into(),
            points,
            weights,
        }
    }

    /// Sum of all arc weights around the curve.
    pub fn weight_sum(&self, h1_rank: usize) -> LatticeVector {
        let mut total = vec![0; h1_rank];
        for w in &self.weights {
            for (t, x) in total.iter_mut().zip(w) {
                *t += x;
            }
        }
        total
    }
}

/// A balanced sutured Heegaard diagram with arc weights and quasipolygon
/// flags.
///
/// The struct can represent invalid diagrams (for example a point missing
/// from every β curve) so that [`validate_diagram`] can report every
/// violation; the other operations reject invalid input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDiagram {
    pub label: String,
    /// Rank of `H₁` of the surface complement (`2g`).
    pub h1_rank: usize,
    pub alpha: Vec<Curve>,
    pub beta: Vec<Curve>,
    /// Attributes of every point that occurs on some curve.
    pub points: BTreeMap<String, PointAttrs>,
    /// Whether the diagram carries a quasipolygon (is a surface diagram).
    pub quasipolygon: bool,
    pub forms: Option<FormPair>,
}

impl AnnotatedDiagram {
    /// An empty diagram with the given `H₁` rank.
    pub fn empty(label: impl Into<String>, h1_rank: usize) -> Self {
        AnnotatedDiagram {
            label: label.into(),
            h1_rank,
            alpha: Vec::new(),
            beta: Vec::new(),
            points: BTreeMap::new(),
            quasipolygon: false,
            forms: None,
        }
    }

    /// Number of intersection points.
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Number of points flagged as lying in the quasipolygon.
    pub fn quasipolygon_point_count(&self) -> usize {
        self.points.values().filter(|a| a.in_quasipolygon).count()
    }
}

/// A generator: one intersection point on each α curve, such that the
/// induced map from α curves to β curves is a bijection.
///
/// `points[i]` is the chosen point on the `i`-th α curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub points: Vec<String>,
}

impl Generator {
    /// Human-readable label.
    ///
    /// When every point identifier has the form `<curve>.<label>`, the
    /// labels are concatenated (so the points `1.5`, `2.1`, `3.2` give
    /// `512`, matching the usual `x₁x₂x₃` notation); otherwise the full
    /// identifiers are joined with `+`.
    pub fn label(&self) -> String {
        let suffixes: Option<Vec<&str>> = self
            .points
            .iter()
            .map(|p| p.rsplit_once('.').map(|(_, s)| s))
            .collect();
        match suffixes {
            Some(s) if !s.is_empty() => s.concat(),
            _ if self.points.is_empty() => "∅".to_string(),
            _ => self.points.join("+"),
        }
    }

    /// Canonical sort key: lexicographic in the point identifiers, each
    /// compared in natural order.
    pub fn canonical_key(&self) -> Vec<Vec<crate::text::NaturalChunk>> {
        self.points.iter().map(|p| crate::text::natural_key(p)).collect()
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}
