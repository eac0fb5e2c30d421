//! Generators, difference classes and the Spin^c partition.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{validate_diagram, AnnotatedDiagram, Curve, Generator, LatticeVector};
use crate::error::{Error, Result};

/// Position of every point on its α and β curve, built once per diagram.
#[derive(Debug, Clone)]
pub(crate) struct DiagramIndex {
    /// `point name -> (alpha curve, position, beta curve, position)`.
    pub(crate) location: HashMap<String, (usize, usize, usize, usize)>,
    /// Points of each α curve grouped by the β curve they lie on.
    pub(crate) by_pair: Vec<Vec<Vec<String>>>,
}

impl DiagramIndex {
    /// Validates the diagram and indexes its points.
    pub(crate) fn new(d: &AnnotatedDiagram) -> Result<Self> {
        let report = validate_diagram(d);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidDiagram(v.to_string()));
        }
        let mut beta_of = HashMap::new();
        for (b, c) in d.beta.iter().enumerate() {
            for (pos, p) in c.points.iter().enumerate() {
                beta_of.insert(p.as_str(), (b, pos));
            }
        }
        let k = d.beta.len();
        let mut location = HashMap::new();
        let mut by_pair = vec![vec![Vec::new(); k]; d.alpha.len()];
        for (a, c) in d.alpha.iter().enumerate() {
            for (pos, p) in c.points.iter().enumerate() {
                let (b, bpos) = beta_of[p.as_str()];
                location.insert(p.clone(), (a, pos, b, bpos));
                by_pair[a][b].push(p.clone());
            }
        }
        Ok(DiagramIndex { location, by_pair })
    }

    /// Checks that `x` is a generator of the indexed diagram.
    pub(crate) fn check(&self, d: &AnnotatedDiagram, x: &Generator) -> Result<()> {
        let foreign = || Error::ForeignGenerator(x.label());
        if x.points.len() != d.alpha.len() {
            return Err(foreign());
        }
        let mut used = vec![false; d.beta.len()];
        for (i, p) in x.points.iter().enumerate() {
            let &(a, _, b, _) = self.location.get(p).ok_or_else(foreign)?;
            if a != i || used[b] {
                return Err(foreign());
            }
            used[b] = true;
        }
        Ok(())
    }
}

/// Enumerates every generator of `d` exactly once, in canonical order.
///
/// Generators whose points lie in the quasipolygon are included; use
/// [`outer_restrict`] to filter them. A diagram without curves has exactly
/// one (empty) generator.
pub fn enumerate_generators(d: &AnnotatedDiagram) -> Result<Vec<Generator>> {
    let index = DiagramIndex::new(d)?;
    let k = d.alpha.len();
    let mut out = Vec::new();
    let mut chosen: Vec<String> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn recurse(
        i: usize,
        index: &DiagramIndex,
        chosen: &mut Vec<String>,
        used: &mut [bool],
        out: &mut Vec<Generator>,
    ) {
        if i == used.len() {
            out.push(Generator {
                points: chosen.clone(),
            });
            return;
        }
        for b in 0..used.len() {
            if used[b] {
                continue;
            }
            used[b] = true;
            for p in &index.by_pair[i][b] {
                chosen.push(p.clone());
                recurse(i + 1, index, chosen, used, out);
                chosen.pop();
            }
            used[b] = false;
        }
    }
    recurse(0, &index, &mut chosen, &mut used, &mut out);
    out.sort_by_cached_key(Generator::canonical_key);
    Ok(out)
}

/// How to walk between two points on one curve when computing a
/// difference class.
///
/// Any choice yields the same class: alternative walks differ by whole
/// curves, whose weights sum to zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Walk {
    /// Walk against the curve orientation instead of along it.
    pub backward: bool,
    /// Additional full turns around the curve (negative turns run against
    /// the orientation).
    pub extra_loops: i64,
}

/// Sum of oriented arc weights walking on `curve` from position `from` to
/// position `to`.
fn walk_sum(curve: &Curve, from: usize, to: usize, walk: Walk, out: &mut [i64]) {
    let n = curve.points.len();
    let add = |out: &mut [i64], w: &[i64], sign: i64| {
        for (o, x) in out.iter_mut().zip(w) {
            *o += sign * x;
        }
    };
    if walk.backward {
        let mut i = from;
        while i != to {
            i = (i + n - 1) % n;
            add(out, &curve.weights[i], -1);
        }
    } else {
        let mut i = from;
        while i != to {
            add(out, &curve.weights[i], 1);
            i = (i + 1) % n;
        }
    }
    for _ in 0..walk.extra_loops.unsigned_abs() {
        let sign = walk.extra_loops.signum();
        for w in &curve.weights {
            add(out, w, sign);
        }
    }
}

/// The difference class `ε(x, y)` with the default walks (along the curve
/// orientation, no extra loops).
///
/// For each `i` the walk runs along the `i`-th α curve from `x_i` to `y_i`,
/// and is closed up along the β curve through `y_i` to the unique point of
/// `x` on that β curve.
pub fn difference_class(d: &AnnotatedDiagram, x: &Generator, y: &Generator) -> Result<LatticeVector> {
    difference_class_along(d, x, y, &mut || Walk::default())
}

/// The difference class `ε(x, y)`, asking `choose` for the walk used on each
/// of the `2k` curve segments (α segments first, then β closures).
pub fn difference_class_along(
    d: &AnnotatedDiagram,
    x: &Generator,
    y: &Generator,
    choose: &mut dyn FnMut() -> Walk,
) -> Result<LatticeVector> {
    let index = DiagramIndex::new(d)?;
    index.check(d, x)?;
    index.check(d, y)?;
    Ok(difference_with_index(d, &index, x, y, choose))
}

fn difference_with_index(
    d: &AnnotatedDiagram,
    index: &DiagramIndex,
    x: &Generator,
    y: &Generator,
    choose: &mut dyn FnMut() -> Walk,
) -> LatticeVector {
    let mut total = vec![0; d.h1_rank];
    for (xi, yi) in x.points.iter().zip(&y.points) {
        let (a, from, _, _) = index.location[xi];
        let (_, to, _, _) = index.location[yi];
        walk_sum(&d.alpha[a], from, to, choose(), &mut total);
    }
    let x_on_beta: HashMap<usize, usize> = x
        .points
        .iter()
        .map(|p| {
            let (_, _, b, bpos) = index.location[p];
            (b, bpos)
        })
        .collect();
    for yi in &y.points {
        let (_, _, b, from) = index.location[yi];
        let to = x_on_beta[&b];
        walk_sum(&d.beta[b], from, to, choose(), &mut total);
    }
    total
}

/// Generators grouped by relative Spin^c structure, keyed by lattice
/// position.
///
/// Positions are anchored so that the class of the canonically least
/// generator sits at the origin, and `position(x) − position(y) = ε(x, y)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SpincPartition {
    pub h1_rank: usize,
    pub classes: BTreeMap<LatticeVector, Vec<Generator>>,
}

impl SpincPartition {
    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    /// Returns `true` when there are no generators at all.
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class sizes in lattice order.
    pub fn counts(&self) -> Vec<usize> {
        self.classes.values().map(Vec::len).collect()
    }
}

/// Partitions `gens` into relative Spin^c classes.
pub fn spinc_partition(d: &AnnotatedDiagram, gens: &[Generator]) -> Result<SpincPartition> {
    let index = DiagramIndex::new(d)?;
    let mut classes: BTreeMap<LatticeVector, Vec<Generator>> = BTreeMap::new();
    let Some(anchor) = gens.iter().min_by_key(|g| g.canonical_key()) else {
        return Ok(SpincPartition {
            h1_rank: d.h1_rank,
            classes,
        });
    };
    index.check(d, anchor)?;
    for g in gens {
        index.check(d, g)?;
        let pos = difference_with_index(d, &index, g, anchor, &mut || Walk::default());
        classes.entry(pos).or_default().push(g.clone());
    }
    for members in classes.values_mut() {
        members.sort_by_cached_key(Generator::canonical_key);
    }
    Ok(SpincPartition {
        h1_rank: d.h1_rank,
        classes,
    })
}

/// The outer generators: those none of whose points lie in the
/// quasipolygon.
///
/// Fails when `d` is not a surface diagram.
pub fn outer_restrict(d: &AnnotatedDiagram, gens: &[Generator]) -> Result<Vec<Generator>> {
    if !d.quasipolygon {
        return Err(Error::NotSurfaceDiagram);
    }
    let index = DiagramIndex::new(d)?;
    let mut out = Vec::new();
    for g in gens {
        index.check(d, g)?;
        if g.points.iter().all(|p| !d.points[p].in_quasipolygon) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PointAttrs;

    fn single_point() -> AnnotatedDiagram {
        let mut d = AnnotatedDiagram::empty("one point", 0);
        d.alpha.push(Curve::new("a1", vec!["p".into()], 0));
        d.beta.push(Curve::new("b1", vec!["p".into()], 0));
        d.points.insert("p".into(), PointAttrs::default());
        d
    }

    #[test]
    fn one_alpha_one_beta_one_point_has_one_generator() {
        let d = single_point();
        let gens = enumerate_generators(&d).unwrap();
        assert_eq!(gens.len(), 1);
        let part = spinc_partition(&d, &gens).unwrap();
        assert_eq!(part.classes.len(), 1);
        assert!(part.classes.contains_key(&Vec::<i64>::new()));
    }

    #[test]
    fn empty_diagram_has_the_empty_generator() {
        let d = AnnotatedDiagram::empty("empty", 0);
        assert_eq!(enumerate_generators(&d).unwrap(), vec![Generator { points: vec![] }]);
    }

    #[test]
    fn foreign_generators_are_rejected() {
        let d = single_point();
        let bogus = Generator {
            points: vec!["q".into()],
        };
        let good = Generator {
            points: vec!["p".into()],
        };
        assert!(matches!(
            difference_class(&d, &bogus, &good),
            Err(Error::ForeignGenerator(_))
        ));
    }

    #[test]
    fn outer_restrict_requires_a_quasipolygon() {
        let d = single_point();
        let gens = enumerate_generators(&d).unwrap();
        assert_eq!(outer_restrict(&d, &gens), Err(Error::NotSurfaceDiagram));
        let mut s = d.clone();
        s.quasipolygon = true;
        assert_eq!(outer_restrict(&s, &gens).unwrap(), gens);
    }

    #[test]
    fn labels_use_point_suffixes() {
        let g = Generator {
            points: vec!["1.5".into(), "2.1".into(), "3.2".into()],
        };
        assert_eq!(g.label(), "512");
        let h = Generator {
            points: vec!["p".into(), "q".into()],
        };
        assert_eq!(h.label(), "p+q");
    }
}
