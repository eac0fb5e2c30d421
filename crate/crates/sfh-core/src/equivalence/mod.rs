//! Inequivalence from the graded invariant, and connected sums.
//!
//! An ambient isotopy between Seifert surfaces induces an isomorphism of
//! their sutured Floer groups that maps relative Spin^c classes
//! bijectively, preserves ranks and is compatible with difference classes.
//! The induced map on `H₁` of the complement also preserves the Seifert
//! form `Q` and the intersection form `U`. So a pairing-preserving,
//! rank-preserving bijection between the supports is a necessary condition
//! for equivalence, and [`distinguish`] searches for one.

mod search;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::LatticeVector;
use crate::error::{Error, Result};
use crate::invariant::{ClassData, GradedInvariant, Rank};

pub use search::{check_bijection, distinguish, DistinguishResult, Verdict, DEFAULT_BUDGET, ORIENTATION_CAVEAT};

/// Q and U values on all ordered pairs of support differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingTables {
    /// Support points (nonzero determined rank) with their ranks.
    pub support: Vec<(LatticeVector, u64)>,
    /// The distinct nonzero differences `s − t` of support points, ordered
    /// by ℓ¹ norm and then descending lexicographically (so unit vectors
    /// with positive entries come first).
    pub differences: Vec<LatticeVector>,
    /// `q[i][j] = Q(differences[i], differences[j])`.
    pub q: Vec<Vec<i64>>,
    /// `u[i][j] = U(differences[i], differences[j])`.
    pub u: Vec<Vec<i64>>,
}

impl PairingTables {
    /// Index of a difference vector in the table.
    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.differences.iter().position(|d| d.as_slice() == v)
    }

    /// `Q(d, d)` for the `i`-th difference.
    pub fn square(&self, i: usize) -> i64 {
        self.q[i][i]
    }
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> LatticeVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Tabulates the pairings of support differences.
///
/// Fails when the invariant has no class of nonzero determined rank.
pub fn pairing_tables(inv: &GradedInvariant) -> Result<PairingTables> {
    let support = inv.support();
    if support.is_empty() {
        return Err(Error::Domain(format!(
            "invariant `{}` has no class of nonzero determined rank",
            inv.label
        )));
    }
    let mut set = BTreeSet::new();
    for (s, _) in &support {
        for (t, _) in &support {
            if s != t {
                set.insert(sub(s, t));
            }
        }
    }
    let mut differences: Vec<LatticeVector> = set.into_iter().collect();
    differences.sort_by_key(|d| (d.iter().map(|x| x.abs()).sum::<i64>(), Reverse(d.clone())));
    let table = |m: &crate::linalg::IntMatrix| {
        differences
            .iter()
            .map(|a| differences.iter().map(|b| m.pair(a, b)).collect())
            .collect()
    };
    let q = table(&inv.forms.q);
    let u = table(&inv.forms.u);
    Ok(PairingTables {
        support,
        differences,
        q,
        u,
    })
}

fn require_determined(inv: &GradedInvariant) -> Result<()> {
    if inv.fully_determined() {
        Ok(())
    } else {
        Err(Error::UndeterminedRanks(format!(
            "invariant `{}` has classes with only bounded rank",
            inv.label
        )))
    }
}

/// The invariant of a boundary-connected sum of two Seifert surfaces.
///
/// The complement of a boundary-connected sum decomposes along a product
/// disk into the two complements, and sutured Floer homology satisfies a
/// Künneth formula, so: lattices and forms add as direct sums, classes are
/// pairs of classes, and counts, ranks and Euler characteristics multiply.
/// Generator labels are paired as `x*y`. [`GradedInvariant::unit`] is a
/// two-sided unit.
pub fn connected_sum(a: &GradedInvariant, b: &GradedInvariant) -> Result<GradedInvariant> {
    require_determined(a)?;
    require_determined(b)?;
    let mut classes = BTreeMap::new();
    for (s, ca) in &a.classes {
        for (t, cb) in &b.classes {
            let pos: LatticeVector = s.iter().chain(t).copied().collect();
            let rank = match (ca.rank, cb.rank) {
                (Rank::Determined(x), Rank::Determined(y)) => Rank::Determined(x * y),
                _ => unreachable!("ranks checked above"),
            };
            let generators = if cb.generators.is_empty() {
                ca.generators.clone()
            } else if ca.generators.is_empty() {
                cb.generators.clone()
            } else {
                ca.generators
                    .iter()
                    .flat_map(|x| cb.generators.iter().map(move |y| format!("{x}*{y}")))
                    .collect()
            };
            let count = ca.count * cb.count;
            classes.insert(
                pos,
                ClassData {
                    count,
                    chi_mod2: (count % 2) as u8,
                    chi_signed: ca.chi_signed.zip(cb.chi_signed).map(|(x, y)| x * y),
                    rank,
                    generators,
                },
            );
        }
    }
    let label = match (a.label.as_str(), b.label.as_str()) {
        (x, "unit") => x.to_string(),
        ("unit", y) => y.to_string(),
        (x, y) => format!("{x} # {y}"),
    };
    Ok(GradedInvariant {
        label,
        h1_rank: a.h1_rank + b.h1_rank,
        forms: a.forms.direct_sum(&b.forms),
        classes,
        total_rank: a.total_rank * b.total_rank,
    })
}
