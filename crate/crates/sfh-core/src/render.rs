//! Plain-text rendering of graded invariants.

use crate::invariant::GradedInvariant;
use crate::text::format_point;

/// Renders the classes of an invariant.
///
/// On a rank-2 lattice this is a grid with `c1` horizontal and `c2`
/// increasing upwards; each class cell shows `rank/count` and empty lattice points show
/// `.`. Other ranks get a table sorted by lattice position.
pub fn render_lattice(inv: &GradedInvariant) -> String {
    if inv.classes.is_empty() {
        return "  (no classes)\n".to_string();
    }
    if inv.h1_rank == 2 {
        render_grid(inv)
    } else {
        render_table(inv)
    }
}

fn cell(inv: &GradedInvariant, x: i64, y: i64) -> String {
    match inv.classes.get(&vec![x, y]) {
        Some(c) => format!("{}/{}", c.rank, c.count),
        None => ".".to_string(),
    }
}

fn render_grid(inv: &GradedInvariant) -> String {
    let xs = inv.classes.keys().map(|p| p[0]);
    let ys = inv.classes.keys().map(|p| p[1]);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let width = (x0..=x1)
        .flat_map(|x| (y0..=y1).map(move |y| (x, y)))
        .map(|(x, y)| cell(inv, x, y).len())
        .chain((x0..=x1).map(|x| x.to_string().len()))
        .max()
        .unwrap_or(1);
    let label_width = (y0..=y1).map(|y| y.to_string().len()).max().unwrap_or(1);
    let mut out = String::from("  cells: rank/count\n");
    out.push_str(&format!("  {:>label_width$} c2\n", ""));
    for y in (y0..=y1).rev() {
        out.push_str(&format!("  {y:>label_width$} |"));
        for x in x0..=x1 {
            out.push_str(&format!(" {:>width$}", cell(inv, x, y)));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "  {:>label_width$} +{}\n",
        "",
        "-".repeat((width + 1) * (x1 - x0 + 1) as usize)
    ));
    out.push_str(&format!("  {:>label_width$}  ", ""));
    for x in x0..=x1 {
        out.push_str(&format!(" {x:>width$}"));
    }
    out.push_str("  c1\n");
    out
}

fn render_table(inv: &GradedInvariant) -> String {
    let pos_width = inv
        .classes
        .keys()
        .map(|p| format_point(p).len())
        .chain(std::iter::once("position".len()))
        .max()
        .unwrap_or(0);
    let mut out = format!("  {:<pos_width$}  count  rank  generators\n", "position");
    for (p, c) in &inv.classes {
        out.push_str(&format!(
            "  {:<pos_width$}  {:>5}  {:>4}  {}\n",
            format_point(p),
            c.count,
            c.rank.to_string(),
            c.generators.join(" ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FormPair;
    use crate::invariant::{ClassData, Rank};
    use std::collections::BTreeMap;

    fn inv(points: &[(Vec<i64>, u64)]) -> GradedInvariant {
        let classes: BTreeMap<_, _> = points
            .iter()
            .map(|(p, r)| {
                (
                    p.clone(),
                    ClassData {
                        count: *r,
                        chi_mod2: (*r % 2) as u8,
                        chi_signed: None,
                        rank: Rank::Determined(*r),
                        generators: vec![],
                    },
                )
            })
            .collect();
        GradedInvariant {
            label: "t".into(),
            h1_rank: points.first().map_or(0, |p| p.0.len()),
            forms: FormPair::empty(),
            classes,
            total_rank: 0,
        }
    }

    #[test]
    fn grid_for_rank_two() {
        let s = render_lattice(&inv(&[(vec![0, 0], 1), (vec![1, 1], 3)]));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[1].trim(), "c2", "{s}");
        assert!(lines[2].contains("1 |") && lines[2].ends_with("3/3"), "{s}");
        assert!(lines[3].contains("0 |") && lines[3].contains("1/1"), "{s}");
        assert!(lines[5].ends_with("c1"), "{s}");
    }

    #[test]
    fn table_otherwise_and_empty() {
        assert!(render_lattice(&inv(&[(vec![], 1)])).contains("()"));
        assert_eq!(render_lattice(&inv(&[])), "  (no classes)\n");
    }
}
