//! The subcommands. Each returns a [`Report`] holding the text output and
//! its JSON mirror.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sfh_core::congruence::CongruenceOutcome;
use sfh_core::diagram::serialize_diagram;
use sfh_core::equivalence::{Verdict, ORIENTATION_CAVEAT};
use sfh_core::fixtures::{self, FixtureKind};
use sfh_core::invariant::{parse_invariant, serialize_invariant};
use sfh_core::presentation::{parse_presentation, serialize_presentation};
use sfh_core::render::render_lattice;
use sfh_core::text::format_point;
use sfh_core::{
    alexander_polynomial, build_surface_diagram, congruence_search, connected_sum, decompose,
    distinguish as distinguish_invariants, enumerate_generators, outer_restrict, spinc_partition,
    validate_diagram, AnnotatedDiagram, GradedInvariant, RankMode,
};

use crate::load::{self, InputRef, Loaded};
use crate::{Inputs, Usage};

/// Output of a subcommand.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, status: 0 }
    }
}

fn mode_name(mode: RankMode) -> String {
    match mode {
        RankMode::Alternating => "alternating".into(),
        RankMode::Fibered => "fibered".into(),
        RankMode::Explicit(n) => format!("explicit {n}"),
    }
}

fn invariant_json(inv: &GradedInvariant) -> Value {
    let classes: Vec<Value> = inv
        .classes
        .iter()
        .map(|(p, c)| {
            json!({
                "position": p,
                "count": c.count,
                "chi_mod2": c.chi_mod2,
                "chi_signed": c.chi_signed,
                "rank": c.rank.to_string(),
                "generators": c.generators,
            })
        })
        .collect();
    json!({
        "label": inv.label,
        "h1_rank": inv.h1_rank,
        "Q": inv.forms.q,
        "U": inv.forms.u,
        "classes": classes,
        "total_rank": inv.total_rank,
        "fully_determined": inv.fully_determined(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(|e| Usage(format!("{e:#}")).into())
}

pub fn parse(inputs: &Inputs) -> Result<Report> {
    let input = load::single(&inputs.fixtures, &inputs.files)?;
    let loaded = load::load(&input, false)?;
    let mut text = String::new();
    let mut status = 0;
    let json = match &loaded {
        Loaded::Diagram(d) => {
            let serialized = serialize_diagram(d);
            let round_trip = sfh_core::diagram::parse_diagram(&serialized)? == *d;
            let report = validate_diagram(d);
            writeln!(text, "kind diagram")?;
            writeln!(text, "label {}", d.label)?;
            writeln!(text, "curves {} alpha, {} beta; {} points", d.alpha.len(), d.beta.len(), d.point_count())?;
            writeln!(text, "round-trip {}", if round_trip { "ok" } else { "FAILED" })?;
            if report.is_valid() {
                writeln!(text, "valid")?;
            } else {
                status = 1;
                writeln!(text, "invalid:")?;
                for v in &report.violations {
                    writeln!(text, "  {v}")?;
                }
            }
            if !round_trip {
                status = 1;
            }
            json!({"kind": "diagram", "label": d.label, "round_trip": round_trip,
                   "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>()})
        }
        Loaded::Presentation(bp) => {
            let round_trip = parse_presentation(&serialize_presentation(bp))? == *bp;
            writeln!(text, "kind presentation")?;
            writeln!(text, "label {}", bp.label)?;
            writeln!(text, "genus {}; {} crossings", bp.genus, bp.crossings.len())?;
            writeln!(text, "round-trip {}", if round_trip { "ok" } else { "FAILED" })?;
            if !round_trip {
                status = 1;
            }
            json!({"kind": "presentation", "label": bp.label, "round_trip": round_trip})
        }
        Loaded::Invariant(inv) => {
            let round_trip = parse_invariant(&serialize_invariant(inv))? == *inv;
            writeln!(text, "kind invariant")?;
            writeln!(text, "label {}", inv.label)?;
            writeln!(text, "{} classes; total rank {}", inv.classes.len(), inv.total_rank)?;
            writeln!(text, "round-trip {}", if round_trip { "ok" } else { "FAILED" })?;
            if !round_trip {
                status = 1;
            }
            json!({"kind": "invariant", "label": inv.label, "round_trip": round_trip})
        }
    };
    Ok(Report { text, json, status })
}

fn file_stem(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| if c.is_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect();
    if s.is_empty() {
        "presentation".into()
    } else {
        s
    }
}

pub fn build(inputs: &Inputs, out_dir: Option<&Path>) -> Result<Report> {
    let input = load::single(&inputs.fixtures, &inputs.files)?;
    let Loaded::Presentation(bp) = load::load(&input, true)? else {
        return Err(Usage(format!("{input} is not a presentation")).into());
    };
    let (surface, report) = build_surface_diagram(&bp)?;
    let flat = decompose(&surface)?;
    let outer = outer_restrict(&surface, &enumerate_generators(&surface)?)?;
    let flat_gens = enumerate_generators(&flat)?;
    let mut text = String::new();
    writeln!(text, "presentation {} (genus {}, {} crossings)", bp.label, bp.genus, bp.crossings.len())?;
    writeln!(text, "alpha curves {}", report.n_alpha)?;
    writeln!(text, "beta curves {}", report.n_beta)?;
    writeln!(text, "points {} ({} in the quasipolygon)", report.n_points, report.n_in_quasipolygon)?;
    writeln!(text, "decomposed Heegaard genus {}", report.genus_heegaard)?;
    writeln!(text, "valid {}", validate_diagram(&surface).is_valid())?;
    writeln!(text, "outer generators {}; generators after decomposition {}", outer.len(), flat_gens.len())?;
    let mut files = Vec::new();
    if let Some(dir) = out_dir {
        let stem = file_stem(&bp.label);
        for (name, d) in [(format!("{stem}-surface.diagram"), &surface), (format!("{stem}.diagram"), &flat)] {
            let path = dir.join(&name);
            write_file(&path, &serialize_diagram(d))?;
            writeln!(text, "wrote {}", path.display())?;
            files.push(path.display().to_string());
        }
    }
    let json = json!({
        "label": bp.label,
        "report": report,
        "outer_generators": outer.len(),
        "decomposed_generators": flat_gens.len(),
        "files": files,
    });
    Ok(Report::ok(text, json))
}

/// A decomposed diagram for an input: diagrams are used as they are
/// (surface diagrams are restricted to outer generators), presentations
/// are built and decomposed.
fn diagram_of(input: &InputRef) -> Result<AnnotatedDiagram> {
    match load::load(input, false)? {
        Loaded::Diagram(d) if d.quasipolygon => Ok(decompose(&d)?),
        Loaded::Diagram(d) => Ok(d),
        Loaded::Presentation(bp) => Ok(decompose(&build_surface_diagram(&bp)?.0)?),
        Loaded::Invariant(_) => Err(Usage(format!("{input} is an invariant, not a diagram")).into()),
    }
}

pub fn generators(inputs: &Inputs) -> Result<Report> {
    let input = load::single(&inputs.fixtures, &inputs.files)?;
    let d = diagram_of(&input)?;
    let gens = enumerate_generators(&d)?;
    let part = spinc_partition(&d, &gens)?;
    let mut text = String::new();
    writeln!(text, "label {}", d.label)?;
    writeln!(text, "generators {}", gens.len())?;
    writeln!(text, "classes {}", part.len())?;
    let mut classes = Vec::new();
    for (pos, members) in &part.classes {
        let labels: Vec<String> = members.iter().map(|g| g.label()).collect();
        writeln!(text, "  {}  count {}  {}", format_point(pos), members.len(), labels.join(" "))?;
        classes.push(json!({"position": pos, "generators": labels}));
    }
    let json = json!({
        "label": d.label,
        "generators": gens.iter().map(|g| g.label()).collect::<Vec<_>>(),
        "classes": classes,
    });
    Ok(Report::ok(text, json))
}

fn invariant_text(inv: &GradedInvariant) -> Result<String> {
    let mut text = String::new();
    writeln!(text, "label {}", inv.label)?;
    let gens: u64 = inv.classes.values().map(|c| c.count).sum();
    writeln!(text, "generators {}", gens)?;
    writeln!(text, "classes {}", inv.classes.len())?;
    writeln!(text, "total rank {}", inv.total_rank)?;
    writeln!(text, "Q = {}", inv.forms.q)?;
    writeln!(text, "U = {}", inv.forms.u)?;
    text.push_str(&render_lattice(inv));
    for (pos, c) in &inv.classes {
        write!(text, "class {} count {} rank {}", format_point(pos), c.count, c.rank)?;
        if let Some(chi) = c.chi_signed {
            write!(text, " chi {chi}")?;
        }
        if !c.generators.is_empty() {
            write!(text, " gens {}", c.generators.join(" "))?;
        }
        text.push('\n');
    }
    let support: Vec<String> = inv
        .support()
        .iter()
        .map(|(p, r)| format!("{}:{}", format_point(p), r))
        .collect();
    writeln!(text, "support {}", support.join(" "))?;
    writeln!(
        text,
        "ranks {}",
        if inv.fully_determined() { "determined" } else { "not all determined" }
    )?;
    Ok(text)
}

pub fn invariant(inputs: &Inputs, mode: RankMode, save: Option<&Path>) -> Result<Report> {
    let input = load::single(&inputs.fixtures, &inputs.files)?;
    let inv = load::invariant(&input, mode)?;
    let mut text = invariant_text(&inv)?;
    writeln!(text, "mode {}", mode_name(mode))?;
    if let Some(path) = save {
        write_file(path, &serialize_invariant(&inv))?;
        writeln!(text, "wrote {}", path.display())?;
    }
    let mut json = invariant_json(&inv);
    json["mode"] = json!(mode_name(mode));
    Ok(Report::ok(text, json))
}

pub fn alexander(inputs: &Inputs) -> Result<Report> {
    let input = load::single(&inputs.fixtures, &inputs.files)?;
    let forms = load::forms(&input)?;
    let coeffs = alexander_polynomial(&forms.q)?;
    let mut text = String::new();
    writeln!(text, "Q = {}", forms.q)?;
    writeln!(text, "U = {}", forms.u)?;
    writeln!(text, "alexander {}", coeffs)?;
    writeln!(text, "top coefficient {}", coeffs.top())?;
    writeln!(text, "total rank if alternating {}", coeffs.top().unsigned_abs())?;
    writeln!(text, "total rank if fibered 1")?;
    let json = json!({"Q": forms.q, "U": forms.u, "alexander": coeffs.coeffs, "top": coeffs.top()});
    Ok(Report::ok(text, json))
}

pub fn distinguish(inputs: &Inputs, mode: RankMode, budget: u64) -> Result<Report> {
    let (a, b) = load::pair(&inputs.fixtures, &inputs.files)?;
    let (ia, ib) = (load::invariant(&a, mode)?, load::invariant(&b, mode)?);
    let res = distinguish_invariants(&ia, &ib, budget)?;
    let mut text = String::new();
    writeln!(text, "first {} (total rank {})", ia.label, ia.total_rank)?;
    writeln!(text, "second {} (total rank {})", ib.label, ib.total_rank)?;
    match &res.verdict {
        Verdict::Distinct => writeln!(text, "verdict distinct")?,
        Verdict::Inconclusive(w) => {
            writeln!(text, "verdict inconclusive")?;
            let pairs: Vec<String> = w
                .iter()
                .map(|(x, y)| format!("{}->{}", format_point(x), format_point(y)))
                .collect();
            writeln!(text, "witness {}", pairs.join(" "))?;
        }
        Verdict::Unknown(n) => writeln!(text, "verdict unknown (budget of {n} nodes exhausted)")?,
    }
    if let Some(ob) = &res.obstruction {
        writeln!(text, "obstruction {ob}")?;
    }
    writeln!(text, "nodes {}", res.nodes)?;
    writeln!(text, "note {ORIENTATION_CAVEAT}")?;
    let json = json!({
        "first": ia.label,
        "second": ib.label,
        "result": res,
        "note": ORIENTATION_CAVEAT,
    });
    Ok(Report::ok(text, json))
}

pub fn congruence(inputs: &Inputs, bound: i64, require_u: bool) -> Result<Report> {
    let (a, b) = load::pair(&inputs.fixtures, &inputs.files)?;
    let (fa, fb) = (load::forms(&a)?, load::forms(&b)?);
    let u = require_u.then_some((&fa.u, &fb.u));
    let outcome = congruence_search(&fa.q, &fb.q, bound, u)?;
    let mut text = String::new();
    writeln!(text, "V1 = {}", fa.q)?;
    writeln!(text, "V2 = {}", fb.q)?;
    match &outcome {
        CongruenceOutcome::Found(wit) => {
            writeln!(text, "W = {}", wit.w)?;
            writeln!(text, "det W = {}", wit.w.det()?)?;
            writeln!(text, "W^T V1 W = V2 verified {}", fa.q.congruent_by(&wit.w)? == fb.q)?;
            let preserves = fa.u.congruent_by(&wit.w)? == fb.u;
            writeln!(text, "preserves U {}", if preserves { "yes" } else { "no" })?;
            writeln!(text, "classically indistinguishable")?;
        }
        CongruenceOutcome::NotFound(b) => {
            writeln!(text, "no witness with entries in [-{b}, {b}]")?;
            writeln!(text, "classical search inconclusive within the bound (not a proof of non-congruence)")?;
        }
    }
    let json = json!({"V1": fa.q, "V2": fb.q, "bound": bound, "require_U": require_u, "outcome": outcome});
    Ok(Report::ok(text, json))
}

pub fn connect_sum(inputs: &Inputs, mode: RankMode, save: Option<&Path>) -> Result<Report> {
    let all = load::inputs(&inputs.fixtures, &inputs.files);
    if all.is_empty() {
        return Err(Usage("connect-sum needs at least one input".into()).into());
    }
    let mut sum = GradedInvariant::unit();
    for input in &all {
        sum = connected_sum(&sum, &load::invariant(input, mode)?)?;
    }
    let mut text = invariant_text(&sum)?;
    if let Some(path) = save {
        write_file(path, &serialize_invariant(&sum))?;
        writeln!(text, "wrote {}", path.display())?;
    }
    Ok(Report::ok(text, invariant_json(&sum)))
}

pub fn fixtures() -> Result<Report> {
    let mut text = String::new();
    let mut list = Vec::new();
    for f in fixtures::list() {
        let kind = match f.kind {
            FixtureKind::Diagram => "diagram",
            FixtureKind::Presentation => "presentation",
        };
        let about = f
            .text
            .lines()
            .find_map(|l| l.strip_prefix("# "))
            .unwrap_or("")
            .to_string();
        writeln!(text, "{:<16} {:<13} {}", f.name, kind, about)?;
        list.push(json!({"name": f.name, "kind": kind, "about": about}));
    }
    Ok(Report::ok(text, Value::Array(list)))
}
