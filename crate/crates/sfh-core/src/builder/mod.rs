//! Surface diagrams built from presentations, and their decomposition.
//!
//! The builder follows the stabilization-extremal recipe at the level of
//! its bookkeeping: the planar diagram of the disk and band cores
//! contributes `2g + k` α circles (one per band and one per crossing) and
//! `2g + k` β circles (a meridian per band and a circle around each
//! crossing), and stabilization adds `4g − 1` pairs: an α circle `S_j`
//! around the `j`-th band-side arc of the boundary knot and a β circle
//! `T_j` around the `j`-th disk-boundary arc, for `j = 1, …, 4g − 1`. So
//! there are `6g + k − 1` circles of each kind.
//!
//! A presentation does not determine a planar embedding (the order of
//! crossings along a band and the faces they bound are not part of it),
//! so the intersection pattern is templated tile by tile:
//!
//! * **band tile** (`F_i`, `M_i`): `|f_i|` outer points, one per full
//!   twist, followed by one point in the quasipolygon. Walking along the
//!   meridian from one outer point to the next crosses the co-disk of band
//!   `i` once more, so consecutive arcs carry `+e_i`;
//! * **crossing tile** (`C_c`, `X_c`): one outer corner and one corner in
//!   the quasipolygon on `C_c`; the corners where `X_c` meets the band
//!   circles of the over- and under-band lie in the quasipolygon;
//! * **stabilization tile** (`S_j`, `T_j`): one outer point and one point
//!   in the quasipolygon; every other intersection of a stabilization
//!   circle (with the meridian of its band, with the neighbouring `T`, and
//!   of `T_j` with the band circle at its disk arc) lies in the
//!   quasipolygon.
//!
//! Hence the outer generators are the choices of one twist point per band,
//! with Spin^c classes filling the box `∏ [0, |f_i| − 1] e_i`. This is the
//! Euler data of a plumbing (Murasugi sum) of twisted unknotted bands; for
//! presentations whose crossings do more than plumb, the tiles ignore the
//! extra linking and the Euler data can be inconsistent with the total
//! rank, which rank solving then reports as infeasible.

mod decompose;

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::{AnnotatedDiagram, Curve, LatticeVector, PointAttrs};
use crate::error::Result;
use crate::presentation::{forms, BandPresentation};

pub use decompose::decompose;

/// Size data of a built surface diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    /// Genus of the decomposed Heegaard surface, `7g + k − 1`.
    pub genus_heegaard: usize,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub n_points: usize,
    pub n_in_quasipolygon: usize,
}

/// Incrementally assembled diagram: points are appended to curves in
/// order, each with a potential on its α and on its β curve. Arc weights
/// are potential differences, so every curve sums to zero.
struct Assembly {
    n: usize,
    alpha: Vec<(String, Vec<(String, LatticeVector)>)>,
    beta: Vec<(String, Vec<(String, LatticeVector)>)>,
    alpha_index: HashMap<String, usize>,
    beta_index: HashMap<String, usize>,
    points: Vec<(String, bool)>,
    inner_count: usize,
}

impl Assembly {
    fn new(n: usize) -> Self {
        Assembly {
            n,
            alpha: Vec::new(),
            beta: Vec::new(),
            alpha_index: HashMap::new(),
            beta_index: HashMap::new(),
            points: Vec::new(),
            inner_count: 0,
        }
    }

    fn alpha(&mut self, name: &str) {
        self.alpha_index.insert(name.into(), self.alpha.len());
        self.alpha.push((name.into(), Vec::new()));
    }

    fn beta(&mut self, name: &str) {
        self.beta_index.insert(name.into(), self.beta.len());
        self.beta.push((name.into(), Vec::new()));
    }

    fn zero(&self) -> LatticeVector {
        vec![0; self.n]
    }

    /// Adds an outer point with the given β potential.
    fn outer(&mut self, name: String, a: &str, b: &str, beta_potential: LatticeVector) {
        let z = self.zero();
        self.alpha[self.alpha_index[a]].1.push((name.clone(), z));
        self.beta[self.beta_index[b]].1.push((name.clone(), beta_potential));
        self.points.push((name, false));
    }

    /// Adds a point of the quasipolygon.
    fn inner(&mut self, a: &str, b: &str) {
        self.inner_count += 1;
        let name = format!("P{}", self.inner_count);
        let z = self.zero();
        self.alpha[self.alpha_index[a]].1.push((name.clone(), z.clone()));
        self.beta[self.beta_index[b]].1.push((name.clone(), z));
        self.points.push((name, true));
    }

    fn finish(self, label: &str) -> AnnotatedDiagram {
        let curve = |(name, pts): (String, Vec<(String, LatticeVector)>)| {
            let m = pts.len();
            let weights = (0..m)
                .map(|i| {
                    let (from, to) = (&pts[i].1, &pts[(i + 1) % m].1);
                    to.iter().zip(from).map(|(t, f)| t - f).collect()
                })
                .collect();
            Curve {
                name,
                points: pts.into_iter().map(|p| p.0).collect(),
                weights,
            }
        };
        let mut d = AnnotatedDiagram::empty(label, self.n);
        d.quasipolygon = true;
        d.points = self
            .points
            .iter()
            .map(|(p, inner)| {
                (
                    p.clone(),
                    PointAttrs {
                        in_quasipolygon: *inner,
                        sign: None,
                    },
                )
            })
            .collect();
        d.alpha = self.alpha.into_iter().map(curve).collect();
        d.beta = self.beta.into_iter().map(curve).collect();
        d
    }
}

/// Builds the surface diagram of a presentation.
///
/// The output is a valid surface diagram carrying the presentation's
/// forms. Its generators outside the quasipolygon are exactly those of
/// [`decompose`]d diagram.
pub fn build_surface_diagram(bp: &BandPresentation) -> Result<(AnnotatedDiagram, BuildReport)> {
    bp.check()?;
    let g = bp.genus;
    let n = bp.band_count();
    let k = bp.crossings.len();
    let stabilizations = 4 * g - 1;
    let mut a = Assembly::new(n);

    for i in 1..=n {
        a.alpha(&format!("F{i}"));
    }
    for c in 1..=k {
        a.alpha(&format!("C{c}"));
    }
    for j in 1..=stabilizations {
        a.alpha(&format!("S{j}"));
    }
    for i in 1..=n {
        a.beta(&format!("M{i}"));
    }
    for c in 1..=k {
        a.beta(&format!("X{c}"));
    }
    for j in 1..=stabilizations {
        a.beta(&format!("T{j}"));
    }

    // Band tiles: one outer point per full twist.
    for (i, &f) in bp.framings.iter().enumerate() {
        let (fa, mb) = (format!("F{}", i + 1), format!("M{}", i + 1));
        for r in 0..f.unsigned_abs() {
            let mut pot = vec![0; n];
            pot[i] = r as i64;
            a.outer(format!("F{}.{}", i + 1, r + 1), &fa, &mb, pot);
        }
        a.inner(&fa, &mb);
    }
    // Crossing tiles.
    for (c, x) in bp.crossings.iter().enumerate() {
        let (ca, xb) = (format!("C{}", c + 1), format!("X{}", c + 1));
        a.outer(format!("C{}.1", c + 1), &ca, &xb, vec![0; n]);
        a.inner(&ca, &xb);
        a.inner(&format!("F{}", x.over), &xb);
        a.inner(&format!("F{}", x.under), &xb);
    }
    // Stabilization tiles. The j-th band-side arc runs along band
    // ⌈j/2⌉; the j-th disk arc ends at that band.
    for j in 1..=stabilizations {
        let (sa, tb) = (format!("S{j}"), format!("T{j}"));
        let band = j.div_ceil(2);
        a.outer(format!("S{j}.1"), &sa, &tb, vec![0; n]);
        a.inner(&sa, &tb);
        a.inner(&sa, &format!("M{band}"));
        a.inner(&sa, &format!("M{band}"));
        if j < stabilizations {
            a.inner(&sa, &format!("T{}", j + 1));
            a.inner(&sa, &format!("T{}", j + 1));
        }
        a.inner(&format!("F{band}"), &tb);
        a.inner(&format!("F{band}"), &tb);
    }

    let mut d = a.finish(&bp.label);
    d.forms = Some(forms(bp));
    let report = BuildReport {
        genus_heegaard: 7 * g + k - 1,
        n_alpha: d.alpha.len(),
        n_beta: d.beta.len(),
        n_points: d.point_count(),
        n_in_quasipolygon: d.quasipolygon_point_count(),
    };
    Ok((d, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_generators, outer_restrict, spinc_partition, validate_diagram};
    use crate::presentation::parse_presentation;

    fn trefoil() -> BandPresentation {
        parse_presentation("genus 1\nboundary e1+ e2+ e1- e2-\nframings 1 1\ncrossing over=2 under=1 sign=+1\n")
            .unwrap()
    }

    #[test]
    fn trefoil_counts() {
        let (d, r) = build_surface_diagram(&trefoil()).unwrap();
        assert_eq!((r.n_alpha, r.n_beta), (6, 6));
        assert_eq!(r.genus_heegaard, 7);
        assert!(validate_diagram(&d).is_valid(), "{}", validate_diagram(&d));
        let gens = enumerate_generators(&d).unwrap();
        assert_eq!(outer_restrict(&d, &gens).unwrap().len(), 1);
    }

    #[test]
    fn plumbing_fills_a_box() {
        let bp = parse_presentation("plumb 2 -3").unwrap();
        let (d, _) = build_surface_diagram(&bp).unwrap();
        let gens = enumerate_generators(&d).unwrap();
        let outer = outer_restrict(&d, &gens).unwrap();
        assert_eq!(outer.len(), 6);
        let part = spinc_partition(&d, &outer).unwrap();
        assert_eq!(part.counts(), vec![1; 6]);
        let xs: Vec<i64> = part.classes.keys().map(|p| p[0]).collect();
        assert_eq!(xs.iter().min().unwrap() - xs.iter().max().unwrap(), -1);
    }

    #[test]
    fn counts_follow_the_formulas() {
        let bp = parse_presentation(
            "genus 2\nboundary e1+ e2+ e1- e2- e3+ e4+ e3- e4-\nframings 1 1 -1 -1\n\
             crossing over=2 under=1 sign=+1\ncrossing over=3 under=4 sign=-1\n",
        )
        .unwrap();
        let (d, r) = build_surface_diagram(&bp).unwrap();
        assert_eq!((r.n_alpha, r.n_beta), (13, 13));
        assert_eq!(r.genus_heegaard, 15);
        assert!(validate_diagram(&d).is_valid());
    }
}
