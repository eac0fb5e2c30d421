//! The classical baseline: bounded search for a unimodular congruence
//! between Seifert matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A unimodular `W` with `Wᵀ V₁ W = V₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    pub w: IntMatrix,
    /// Whether `Wᵀ U₁ W = U₂` also holds for the intersection forms.
    pub preserves_u: bool,
}

/// Result of [`congruence_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceOutcome {
    Found(CongruenceWitness),
    /// No witness with entries bounded by the given value. This is relative
    /// to the bound and never proves non-congruence.
    NotFound(i64),
}

struct Search<'a> {
    v1: &'a IntMatrix,
    v2: &'a IntMatrix,
    /// `(U₁, U₂)` when U-preservation is required.
    u: Option<(&'a IntMatrix, &'a IntMatrix)>,
    n: usize,
    shell: i64,
    columns: Vec<Vec<i64>>,
}

impl Search<'_> {
    /// Entry values tried at `row` of column `col`: the diagonal position
    /// counts down from the shell, every other position counts up.
    fn values(&self, row: usize, col: usize) -> Vec<i64> {
        let m = self.shell;
        if row == col {
            (-m..=m).rev().collect()
        } else {
            (-m..=m).collect()
        }
    }

    /// Whether candidate column `w` (for index `j = columns.len()`) is
    /// compatible with the form values against itself and earlier columns.
    fn compatible(&self, w: &[i64]) -> bool {
        let j = self.columns.len();
        for (i, c) in self.columns.iter().chain(std::iter::once(&w.to_vec())).enumerate() {
            if self.v1.pair(c, w) != self.v2.get(i, j) || self.v1.pair(w, c) != self.v2.get(j, i) {
                return false;
            }
            if let Some((u1, u2)) = self.u {
                if u1.pair(c, w) != u2.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(&self, col: usize) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for row in 0..self.n {
            let vals = self.values(row, col);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    vals.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn run(&mut self) -> Option<IntMatrix> {
        let col = self.columns.len();
        if col == self.n {
            let max = self.columns.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
            if max != self.shell {
                return None;
            }
            let w = matrix_from_columns(&self.columns, self.n);
            return matches!(w.det(), Ok(1) | Ok(-1)).then_some(w);
        }
        for cand in self.candidates(col) {
            if !self.compatible(&cand) {
                continue;
            }
            self.columns.push(cand);
            if let Some(w) = self.run() {
                return Some(w);
            }
            self.columns.pop();
        }
        None
    }
}

fn matrix_from_columns(columns: &[Vec<i64>], n: usize) -> IntMatrix {
    let mut w = IntMatrix::zeros(n);
    for (j, c) in columns.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            w.set(i, j, x);
        }
    }
    w
}

/// Searches for a unimodular `W` with entries in `[−bound, bound]` and
/// `Wᵀ V₁ W = V₂` (and `Wᵀ U₁ W = U₂` when `u` is given).
///
/// The search is exhaustive and deterministic. It deepens over the largest
/// entry size `m = 1, 2, …, bound`, so a witness with smaller entries is
/// always preferred. Within a shell, columns are chosen left to right; each
/// column must already satisfy every form equation against the columns
/// before it, which prunes almost everything. `preserves_u` on the returned
/// witness is computed after the fact, so it is informative even when U was
/// not required.
pub fn congruence_search(
    v1: &IntMatrix,
    v2: &IntMatrix,
    bound: i64,
    u: Option<(&IntMatrix, &IntMatrix)>,
) -> Result<CongruenceOutcome> {
    let n = v1.nrows();
    if !v1.is_square() || !v2.is_square() || v2.nrows() != n || !n.is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "congruence needs two square matrices of the same even size, got {}x{} and {}x{}",
            v1.nrows(),
            v1.ncols(),
            v2.nrows(),
            v2.ncols()
        )));
    }
    if let Some((u1, u2)) = u {
        if u1.nrows() != n || u2.nrows() != n || !u1.is_square() || !u2.is_square() {
            return Err(Error::Dimension("intersection forms must match the Seifert matrices".into()));
        }
    }
    if bound < 1 {
        return Err(Error::Domain("entry bound must be at least 1".into()));
    }
    if n == 0 {
        return Ok(CongruenceOutcome::Found(CongruenceWitness {
            w: IntMatrix::zeros(0),
            preserves_u: true,
        }));
    }
    for shell in 1..=bound {
        let mut search = Search {
            v1,
            v2,
            u,
            n,
            shell,
            columns: Vec::with_capacity(n),
        };
        if let Some(w) = search.run() {
            let preserves_u = match u {
                Some((u1, u2)) => u1.congruent_by(&w).map(|m| &m == u2).unwrap_or(false),
                None => true,
            };
            return Ok(CongruenceOutcome::Found(CongruenceWitness { w, preserves_u }));
        }
    }
    Ok(CongruenceOutcome::NotFound(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn symplectic() -> IntMatrix {
        m(&[&[0, 1], &[-1, 0]])
    }

    #[test]
    fn finds_the_known_witness() {
        let v1 = m(&[&[2, 0], &[1, -2]]);
        let v2 = m(&[&[2, -1], &[0, -2]]);
        let u = symplectic();
        let out = congruence_search(&v1, &v2, 5, Some((&u, &u))).unwrap();
        let CongruenceOutcome::Found(wit) = out else {
            panic!("no witness")
        };
        assert_eq!(wit.w, m(&[&[4, -5], &[-3, 4]]));
        assert!(wit.preserves_u);
        assert_eq!(v1.congruent_by(&wit.w).unwrap(), v2);
        assert_eq!(wit.w.det().unwrap(), 1);
    }

    #[test]
    fn identity_for_equal_matrices() {
        let v = m(&[&[2, 0], &[1, -2]]);
        for bound in 1..4 {
            let out = congruence_search(&v, &v, bound, None).unwrap();
            assert_eq!(
                out,
                CongruenceOutcome::Found(CongruenceWitness {
                    w: IntMatrix::identity(2),
                    preserves_u: true
                })
            );
        }
    }

    #[test]
    fn negative_control_is_not_found() {
        let v1 = m(&[&[2, 0], &[1, -2]]);
        let v2 = m(&[&[3, 0], &[1, -2]]);
        // Independent oracle: congruent matrices have equal det(V + Vᵀ).
        let sym = |v: &IntMatrix| v.add(&v.transpose()).unwrap().det().unwrap();
        assert_ne!(sym(&v1), sym(&v2));
        assert_eq!(congruence_search(&v1, &v2, 3, None).unwrap(), CongruenceOutcome::NotFound(3));
    }

    #[test]
    fn rejects_bad_shapes() {
        let v = m(&[&[1]]);
        assert!(congruence_search(&v, &v, 1, None).is_err());
        let w = IntMatrix::zeros(2);
        assert!(congruence_search(&w, &IntMatrix::zeros(4), 1, None).is_err());
        assert!(congruence_search(&w, &w, 0, None).is_err());
    }
}
