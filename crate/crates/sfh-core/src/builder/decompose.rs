//! Decomposition of a surface diagram along its quasipolygon.

use crate::diagram::{AnnotatedDiagram, Curve};
use crate::error::{Error, Result};

fn restrict(curve: &Curve, keep: impl Fn(&str) -> bool, h1_rank: usize) -> Curve {
    let n = curve.points.len();
    let kept: Vec<usize> = (0..n).filter(|&i| keep(&curve.points[i])).collect();
    let weights = kept
        .iter()
        .enumerate()
        .map(|(t, &i)| {
            let next = kept[(t + 1) % kept.len()];
            let mut w = vec![0; h1_rank];
            let mut j = i;
            loop {
                for (acc, x) in w.iter_mut().zip(&curve.weights[j]) {
                    *acc += x;
                }
                j = (j + 1) % n;
                if j == next {
                    break;
                }
            }
            w
        })
        .collect();
    Curve {
        name: curve.name.clone(),
        points: kept.iter().map(|&i| curve.points[i].clone()).collect(),
        weights,
    }
}

/// The combinatorial restriction of a surface diagram to the complement of
/// its quasipolygon.
///
/// Every point flagged `inP` is deleted and the arcs on either side of it
/// are merged, so each surviving curve is still a closed cycle whose arc
/// weights sum to the same total (zero). The generators of the result are
/// exactly the outer generators of `d`, with the same labels. The result
/// carries no quasipolygon; a diagram whose quasipolygon is empty comes
/// back unchanged apart from that flag.
pub fn decompose(d: &AnnotatedDiagram) -> Result<AnnotatedDiagram> {
    if !d.quasipolygon {
        return Err(Error::NotSurfaceDiagram);
    }
    let keep = |p: &str| d.points.get(p).is_none_or(|a| !a.in_quasipolygon);
    let mut out = d.clone();
    out.quasipolygon = false;
    out.alpha = d.alpha.iter().map(|c| restrict(c, keep, d.h1_rank)).collect();
    out.beta = d.beta.iter().map(|c| restrict(c, keep, d.h1_rank)).collect();
    out.points.retain(|_, a| !a.in_quasipolygon);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_generators, outer_restrict, validate_diagram};
    use crate::fixtures;

    #[test]
    fn surface_fixture_decomposes_to_the_decomposed_fixture() {
        for name in ["8_3-R1", "8_3-R2"] {
            let surface = fixtures::diagram(&format!("{name}-surface")).unwrap();
            let flat = fixtures::diagram(name).unwrap();
            let d = decompose(&surface).unwrap();
            assert_eq!((&d.alpha, &d.beta, &d.points, &d.forms), (&flat.alpha, &flat.beta, &flat.points, &flat.forms));
            assert!(validate_diagram(&d).is_valid());
            let outer = outer_restrict(&surface, &enumerate_generators(&surface).unwrap()).unwrap();
            assert_eq!(enumerate_generators(&d).unwrap(), outer);
        }
    }

    #[test]
    fn requires_a_quasipolygon() {
        let d = fixtures::diagram("8_3-R1").unwrap();
        assert_eq!(decompose(&d), Err(Error::NotSurfaceDiagram));
    }

    #[test]
    fn empty_quasipolygon_is_identity() {
        let mut d = fixtures::diagram("8_3-R1").unwrap();
        d.quasipolygon = true;
        let mut out = decompose(&d).unwrap();
        out.quasipolygon = true;
        assert_eq!(out, d);
    }
}
