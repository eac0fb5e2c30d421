//! Rank solving from Euler data and a total rank.

use std::collections::BTreeMap;

use super::{EulerClass, EulerData, Rank};
use crate::diagram::LatticeVector;
use crate::error::{Error, Result};
use crate::text::format_point;

/// Ranks a single class may take: at most its generator count, congruent
/// to the count mod 2, and at least `|χ|` when the signed Euler
/// characteristic is known.
fn allowed(class: &EulerClass) -> impl Iterator<Item = u64> {
    let lo = match class.chi_signed {
        Some(chi) => chi.unsigned_abs(),
        None => class.count % 2,
    };
    (lo..=class.count).step_by(2)
}

/// Solves for per-class ranks.
///
/// Feasible rank vectors `(r_s)` satisfy `r_s ≤ count_s`,
/// `r_s ≡ count_s (mod 2)`, `r_s ≥ |χ_s|` when signed data is present, and
/// `Σ r_s = total_rank`. A class whose rank is the same in every feasible
/// vector is [`Rank::Determined`]; otherwise it gets the interval of values
/// it takes over all feasible vectors. An empty feasible set is an error:
/// the asserted total rank and the diagram are inconsistent.
pub fn solve_ranks(euler: &EulerData, total_rank: u64) -> Result<BTreeMap<LatticeVector, Rank>> {
    let classes: Vec<(&LatticeVector, &EulerClass)> = euler.classes.iter().collect();
    let capacity: u64 = classes.iter().map(|(_, c)| c.count).sum();
    let infeasible = || {
        Error::Infeasible(format!(
            "no rank assignment over {} classes sums to {total_rank}",
            classes.len()
        ))
    };
    if total_rank > capacity {
        return Err(infeasible());
    }
    let t = total_rank as usize;
    let n = classes.len();

    // prefix[i][s]: classes 0..i can sum to s; suffix[i][s]: classes i..n can.
    let mut prefix = vec![vec![false; t + 1]; n + 1];
    prefix[0][0] = true;
    for i in 0..n {
        for s in 0..=t {
            if !prefix[i][s] {
                continue;
            }
            for r in allowed(classes[i].1) {
                let next = s + r as usize;
                if next <= t {
                    prefix[i + 1][next] = true;
                }
            }
        }
    }
    let mut suffix = vec![vec![false; t + 1]; n + 1];
    suffix[n][0] = true;
    for i in (0..n).rev() {
        for s in 0..=t {
            if !suffix[i + 1][s] {
                continue;
            }
            for r in allowed(classes[i].1) {
                let next = s + r as usize;
                if next <= t {
                    suffix[i][next] = true;
                }
            }
        }
    }
    if !prefix[n][t] {
        return Err(infeasible());
    }

    let mut out = BTreeMap::new();
    for (i, (pos, class)) in classes.iter().enumerate() {
        let feasible: Vec<u64> = allowed(class)
            .filter(|&r| {
                let r = r as usize;
                r <= t && (0..=t - r).any(|p| prefix[i][p] && suffix[i + 1][t - r - p])
            })
            .collect();
        let (lo, hi) = match (feasible.first(), feasible.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => {
                return Err(Error::Infeasible(format!(
                    "class {} admits no rank",
                    format_point(pos)
                )))
            }
        };
        out.insert(
            (*pos).clone(),
            if lo == hi {
                Rank::Determined(lo)
            } else {
                Rank::Interval(lo, hi)
            },
        );
    }
    Ok(out)
}
