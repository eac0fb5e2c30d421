//! The bijection search behind [`distinguish`].

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{pairing_tables, require_determined, sub, PairingTables};
use crate::diagram::LatticeVector;
use crate::error::{Error, Result};
use crate::invariant::GradedInvariant;
use crate::linalg::IntMatrix;
use crate::text::format_point;

/// Default node budget of [`distinguish`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Printed next to every verdict: the invariant only sees oriented
/// equivalence.
pub const ORIENTATION_CAVEAT: &str = "a distinct verdict rules out orientation-preserving \
equivalence only; an orientation-reversing diffeomorphism may still exist (the invariant \
detects chirality of Seifert surfaces)";

/// Outcome of the bijection search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No rank- and pairing-preserving bijection exists: the surfaces are
    /// not equivalent by an orientation-preserving diffeomorphism.
    Distinct,
    /// A compatible bijection exists (given as support-point pairs). This
    /// proves nothing.
    Inconclusive(Vec<(LatticeVector, LatticeVector)>),
    /// The node budget was exhausted before the search finished.
    Unknown(u64),
}

/// Verdict together with a human-readable certificate for `Distinct`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishResult {
    pub verdict: Verdict,
    /// The first violated pairing equality, for `Distinct`.
    pub obstruction: Option<String>,
    /// Search nodes visited.
    pub nodes: u64,
}

impl DistinguishResult {
    fn distinct(obstruction: String, nodes: u64) -> Self {
        DistinguishResult {
            verdict: Verdict::Distinct,
            obstruction: Some(obstruction),
            nodes,
        }
    }
}

fn values(set: &BTreeSet<i64>) -> String {
    if set.len() == 1 {
        format!("={}", set.iter().next().unwrap())
    } else {
        let v: Vec<String> = set.iter().map(i64::to_string).collect();
        format!(" in {{{}}}", v.join(","))
    }
}

/// Looks for a pair of differences `(c1, c2)` of the first invariant whose
/// pairing values are realized by no pair of differences of the second.
/// Any support bijection maps differences to differences, so such a pair
/// already proves that no compatible bijection exists.
fn local_obstruction(t1: &PairingTables, t2: &PairingTables) -> Option<String> {
    let n2 = t2.differences.len();
    let squares2: BTreeSet<i64> = (0..n2).map(|i| t2.square(i)).collect();
    let mut by_squares: HashMap<(i64, i64), Vec<(i64, i64, i64)>> = HashMap::new();
    for i in 0..n2 {
        for j in 0..n2 {
            if i != j {
                by_squares
                    .entry((t2.square(i), t2.square(j)))
                    .or_default()
                    .push((t2.q[i][j], t2.q[j][i], t2.u[i][j]));
            }
        }
    }
    let n1 = t1.differences.len();
    let name = |i: usize| format_point(&t1.differences[i]);
    for a in 0..n1 {
        if !squares2.contains(&t1.square(a)) {
            return Some(format!(
                "Q(c1,c1)={} but no difference d1 of the second invariant has that square (c1={})",
                t1.square(a),
                name(a)
            ));
        }
    }
    for a in 0..n1 {
        for b in 0..n1 {
            if a == b {
                continue;
            }
            let (sa, sb) = (t1.square(a), t1.square(b));
            let where_ = format!(
                "c1={}, c2={}; (d1,d2) ranges over difference pairs of the second invariant \
                 with Q(d1,d1)={sa}, Q(d2,d2)={sb}",
                name(a),
                name(b)
            );
            let Some(cands) = by_squares.get(&(sa, sb)) else {
                return Some(format!(
                    "Q(c1,c1)={sa}, Q(c2,c2)={sb} vs no such pair in the second invariant (c1={}, c2={})",
                    name(a),
                    name(b)
                ));
            };
            let (qab, qba, uab) = (t1.q[a][b], t1.q[b][a], t1.u[a][b]);
            let set = |f: &dyn Fn(&(i64, i64, i64)) -> i64, keep: &dyn Fn(&&(i64, i64, i64)) -> bool| {
                cands.iter().filter(keep).map(f).collect::<BTreeSet<i64>>()
            };
            let all = |_: &&(i64, i64, i64)| true;
            let s = set(&|c| c.0, &all);
            if !s.contains(&qab) {
                return Some(format!("Q(c1,c2)={qab} vs Q(d1,d2){} ({where_})", values(&s)));
            }
            let keep1 = |c: &&(i64, i64, i64)| c.0 == qab;
            let s = set(&|c| c.1, &keep1);
            if !s.contains(&qba) {
                return Some(format!("Q(c2,c1)={qba} vs Q(d2,d1){} ({where_}, Q(d1,d2)={qab})", values(&s)));
            }
            let keep2 = |c: &&(i64, i64, i64)| c.0 == qab && c.1 == qba;
            let s = set(&|c| c.2, &keep2);
            if !s.contains(&uab) {
                return Some(format!("U(c1,c2)={uab} vs U(d1,d2){} ({where_})", values(&s)));
            }
        }
    }
    None
}

struct Search<'a> {
    q1: &'a IntMatrix,
    u1: &'a IntMatrix,
    q2: &'a IntMatrix,
    u2: &'a IntMatrix,
    /// Support of the first invariant relative to its first point.
    v: Vec<LatticeVector>,
    points2: Vec<LatticeVector>,
    candidates: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn w(&self, i: usize) -> LatticeVector {
        sub(&self.points2[self.image[i]], &self.points2[self.image[0]])
    }

    /// Gram entries of the new point against every assigned point agree.
    fn consistent(&self, i: usize) -> bool {
        let wi = self.w(i);
        (0..=i).all(|j| {
            let wj = self.w(j);
            let (vi, vj) = (&self.v[i], &self.v[j]);
            self.q1.pair(vi, vj) == self.q2.pair(&wi, &wj)
                && self.q1.pair(vj, vi) == self.q2.pair(&wj, &wi)
                && self.u1.pair(vi, vj) == self.u2.pair(&wi, &wj)
        })
    }

    fn run(&mut self, i: usize) -> Step {
        if i == self.v.len() {
            return Step::Found;
        }
        for k in 0..self.candidates[i].len() {
            let c = self.candidates[i][k];
            if self.used[c] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.used[c] = true;
            self.image.push(c);
            if self.consistent(i) {
                match self.run(i + 1) {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.image.pop();
            self.used[c] = false;
        }
        Step::Exhausted
    }
}

/// Rank and multiset of Q-squares of differences to all other points.
fn fingerprints(support: &[(LatticeVector, u64)], q: &IntMatrix) -> Vec<(u64, Vec<i64>)> {
    support
        .iter()
        .map(|(s, r)| {
            let mut sq: Vec<i64> = support
                .iter()
                .filter(|(t, _)| t != s)
                .map(|(t, _)| {
                    let d = sub(s, t);
                    q.pair(&d, &d)
                })
                .collect();
            sq.sort_unstable();
            (*r, sq)
        })
        .collect()
}

/// Searches for a rank-preserving bijection of supports that preserves Q
/// and U on all differences.
///
/// The search first looks for a local obstruction (a pair of differences
/// whose pairing values the second invariant cannot match). Otherwise it
/// backtracks over bijections, pruning by per-point fingerprints. Since
/// `s − t = (s − s₀) − (t − s₀)`, preserving every pairing of differences is
/// equivalent to preserving the Gram matrices of `s − s₀` and
/// `σ(s) − σ(s₀)`, which is what is checked incrementally.
pub fn distinguish(a: &GradedInvariant, b: &GradedInvariant, budget: u64) -> Result<DistinguishResult> {
    if a.h1_rank != b.h1_rank {
        return Err(Error::Dimension(format!(
            "invariants live on lattices of rank {} and {}",
            a.h1_rank, b.h1_rank
        )));
    }
    require_determined(a)?;
    require_determined(b)?;
    let (s1, s2) = (a.support(), b.support());
    if s1.is_empty() && s2.is_empty() {
        return Ok(DistinguishResult {
            verdict: Verdict::Inconclusive(Vec::new()),
            obstruction: None,
            nodes: 0,
        });
    }
    if s1.len() != s2.len() {
        return Ok(DistinguishResult::distinct(
            format!("support sizes differ: {} vs {}", s1.len(), s2.len()),
            0,
        ));
    }
    let ranks = |s: &[(LatticeVector, u64)]| {
        let mut r: Vec<u64> = s.iter().map(|p| p.1).collect();
        r.sort_unstable();
        r
    };
    if ranks(&s1) != ranks(&s2) {
        return Ok(DistinguishResult::distinct(
            format!("rank multisets differ: {:?} vs {:?}", ranks(&s1), ranks(&s2)),
            0,
        ));
    }
    let (t1, t2) = (pairing_tables(a)?, pairing_tables(b)?);
    if let Some(ob) = local_obstruction(&t1, &t2) {
        return Ok(DistinguishResult::distinct(ob, 0));
    }

    let f1 = fingerprints(&s1, &a.forms.q);
    let f2 = fingerprints(&s2, &b.forms.q);
    let candidates: Vec<Vec<usize>> = f1
        .iter()
        .map(|f| (0..s2.len()).filter(|&j| &f2[j] == f).collect())
        .collect();
    if let Some(i) = candidates.iter().position(Vec::is_empty) {
        return Ok(DistinguishResult::distinct(
            format!(
                "support point {} has no image with the same rank and difference squares",
                format_point(&s1[i].0)
            ),
            0,
        ));
    }
    let mut search = Search {
        q1: &a.forms.q,
        u1: &a.forms.u,
        q2: &b.forms.q,
        u2: &b.forms.u,
        v: s1.iter().map(|(s, _)| sub(s, &s1[0].0)).collect(),
        points2: s2.iter().map(|(t, _)| t.clone()).collect(),
        candidates,
        image: Vec::new(),
        used: vec![false; s2.len()],
        nodes: 0,
        budget,
    };
    let step = search.run(0);
    let nodes = search.nodes;
    Ok(match step {
        Step::Found => DistinguishResult {
            verdict: Verdict::Inconclusive(
                s1.iter()
                    .zip(&search.image)
                    .map(|((s, _), &j)| (s.clone(), s2[j].0.clone()))
                    .collect(),
            ),
            obstruction: None,
            nodes,
        },
        Step::Exhausted => DistinguishResult::distinct(
            format!(
                "no rank- and pairing-preserving bijection of the {} support points exists \
                 (exhaustive search, {nodes} nodes)",
                s1.len()
            ),
            nodes,
        ),
        Step::OutOfBudget => DistinguishResult {
            verdict: Verdict::Unknown(budget),
            obstruction: None,
            nodes,
        },
    })
}

/// Independently re-checks a bijection: ranks agree and, for all ordered
/// pairs of ordered support pairs, Q and U of the differences agree.
pub fn check_bijection(
    a: &GradedInvariant,
    b: &GradedInvariant,
    pairs: &[(LatticeVector, LatticeVector)],
) -> bool {
    let (s1, s2) = (a.support(), b.support());
    let rank1: HashMap<_, _> = s1.iter().cloned().collect();
    let rank2: HashMap<_, _> = s2.iter().cloned().collect();
    let images: BTreeSet<_> = pairs.iter().map(|p| &p.1).collect();
    if pairs.len() != s1.len() || images.len() != s2.len() {
        return false;
    }
    if pairs.iter().any(|(x, y)| !rank1.contains_key(x) || rank1.get(x) != rank2.get(y)) {
        return false;
    }
    let diffs: Vec<(LatticeVector, LatticeVector)> = pairs
        .iter()
        .flat_map(|(s, ss)| pairs.iter().map(move |(t, tt)| (sub(s, t), sub(ss, tt))))
        .collect();
    diffs.iter().all(|(x, xx)| {
        diffs.iter().all(|(y, yy)| {
            a.forms.q.pair(x, y) == b.forms.q.pair(xx, yy) && a.forms.u.pair(x, y) == b.forms.u.pair(xx, yy)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::square_invariant;
    use super::super::connected_sum;
    use super::*;

    fn r1() -> GradedInvariant {
        square_invariant("r1", &[&[2, 0], &[1, -2]])
    }

    fn r2() -> GradedInvariant {
        square_invariant("r2", &[&[2, -1], &[0, -2]])
    }

    #[test]
    fn r1_and_r2_are_distinct_by_a_local_pairing() {
        let res = distinguish(&r1(), &r2(), DEFAULT_BUDGET).unwrap();
        assert_eq!(res.verdict, Verdict::Distinct);
        let ob = res.obstruction.unwrap();
        assert!(ob.starts_with("Q(c1,c2)=0 vs Q(d1,d2) in {-1,1}"), "{ob}");
    }

    #[test]
    fn reflexive_is_inconclusive_with_a_checked_witness() {
        let res = distinguish(&r1(), &r1(), DEFAULT_BUDGET).unwrap();
        let Verdict::Inconclusive(w) = res.verdict else {
            panic!("expected a witness")
        };
        assert!(w.iter().all(|(x, y)| x == y));
        assert!(check_bijection(&r1(), &r1(), &w));
    }

    #[test]
    fn swapped_connected_sums_match() {
        let x = connected_sum(&r1(), &r2()).unwrap();
        let y = connected_sum(&r2(), &r1()).unwrap();
        let res = distinguish(&x, &y, DEFAULT_BUDGET).unwrap();
        let Verdict::Inconclusive(w) = res.verdict else {
            panic!("expected a witness, got {res:?}")
        };
        assert!(check_bijection(&x, &y, &w));
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let x = connected_sum(&r1(), &r1()).unwrap();
        let res = distinguish(&x, &x, 3).unwrap();
        assert_eq!(res.verdict, Verdict::Unknown(3));
    }

    #[test]
    fn preconditions() {
        assert!(distinguish(&r1(), &GradedInvariant::unit(), 10).is_err());
    }
}
