//! Resolving command-line inputs (fixture names or files) into data.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sfh_core::diagram::parse_diagram;
use sfh_core::fixtures::{self, FixtureKind};
use sfh_core::invariant::{parse_invariant, Source};
use sfh_core::presentation::parse_presentation;
use sfh_core::{
    compute_invariant, intersection_matrix, seifert_matrix, AnnotatedDiagram, BandPresentation,
    FormPair, GradedInvariant, RankMode,
};

use crate::Usage;

/// A loaded input.
#[derive(Debug, Clone)]
pub enum Loaded {
    Diagram(AnnotatedDiagram),
    Presentation(BandPresentation),
    Invariant(GradedInvariant),
}

/// Where an input comes from.
#[derive(Debug, Clone)]
pub enum InputRef {
    Fixture(String),
    File(PathBuf),
}

impl std::fmt::Display for InputRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputRef::Fixture(n) => write!(f, "fixture {n}"),
            InputRef::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Collects `--fixture` names and positional files, in that order.
pub fn inputs(fixtures: &[String], files: &[PathBuf]) -> Vec<InputRef> {
    fixtures
        .iter()
        .cloned()
        .map(InputRef::Fixture)
        .chain(files.iter().cloned().map(InputRef::File))
        .collect()
}

/// Exactly one input, or a usage error.
pub fn single(fixtures: &[String], files: &[PathBuf]) -> Result<InputRef> {
    let mut all = inputs(fixtures, files);
    if all.len() != 1 {
        return Err(Usage(format!("expected exactly one input, got {}", all.len())).into());
    }
    Ok(all.remove(0))
}

/// Exactly two inputs, or a usage error.
pub fn pair(fixtures: &[String], files: &[PathBuf]) -> Result<(InputRef, InputRef)> {
    let mut all = inputs(fixtures, files);
    if all.len() != 2 {
        return Err(Usage(format!("expected exactly two inputs, got {}", all.len())).into());
    }
    let b = all.pop().unwrap();
    let a = all.pop().unwrap();
    Ok((a, b))
}

/// Guesses the format of a text: invariant blocks start with
/// `invariant {`, diagrams declare `h1_rank`, everything else is a
/// presentation.
fn sniff(text: &str) -> Format {
    let meaningful = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let mut first = true;
    let mut kind = Format::Presentation;
    for line in meaningful {
        if first && line.starts_with("invariant") {
            return Format::Invariant;
        }
        first = false;
        if line.starts_with("h1_rank") {
            kind = Format::Diagram;
        }
    }
    kind
}

enum Format {
    Diagram,
    Presentation,
    Invariant,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| Usage(format!("{e:#}")).into())
}

/// Loads an input. A fixture name that exists both as a diagram and as a
/// presentation resolves to the diagram unless `prefer_presentation`.
pub fn load(input: &InputRef, prefer_presentation: bool) -> Result<Loaded> {
    match input {
        InputRef::Fixture(name) => {
            let kinds: Vec<FixtureKind> = fixtures::list()
                .iter()
                .filter(|f| f.name == name)
                .map(|f| f.kind)
                .collect();
            let want = if prefer_presentation && kinds.contains(&FixtureKind::Presentation) {
                FixtureKind::Presentation
            } else if kinds.contains(&FixtureKind::Diagram) {
                FixtureKind::Diagram
            } else if kinds.contains(&FixtureKind::Presentation) {
                FixtureKind::Presentation
            } else {
                return Err(Usage(format!("no fixture named `{name}` (see `sfh fixtures`)")).into());
            };
            Ok(match want {
                FixtureKind::Diagram => Loaded::Diagram(fixtures::diagram(name)?),
                FixtureKind::Presentation => Loaded::Presentation(fixtures::presentation(name)?),
            })
        }
        InputRef::File(path) => {
            let text = read(path)?;
            let ctx = || format!("in {}", path.display());
            Ok(match sniff(&text) {
                Format::Diagram => Loaded::Diagram(parse_diagram(&text).with_context(ctx)?),
                Format::Presentation => {
                    Loaded::Presentation(parse_presentation(&text).with_context(ctx)?)
                }
                Format::Invariant => Loaded::Invariant(parse_invariant(&text).with_context(ctx)?),
            })
        }
    }
}

/// The invariant of an input under the asserted rank mode.
pub fn invariant(input: &InputRef, mode: RankMode) -> Result<GradedInvariant> {
    Ok(match load(input, false)? {
        Loaded::Diagram(d) => compute_invariant(Source::Diagram(&d), mode)?,
        Loaded::Presentation(bp) => compute_invariant(Source::Presentation(&bp), mode)?,
        Loaded::Invariant(inv) => inv,
    })
}

/// The Seifert and intersection forms of an input.
pub fn forms(input: &InputRef) -> Result<FormPair> {
    match load(input, true)? {
        Loaded::Presentation(bp) => Ok(FormPair {
            q: seifert_matrix(&bp),
            u: intersection_matrix(&bp),
        }),
        Loaded::Diagram(d) => d
            .forms
            .ok_or_else(|| sfh_core::Error::Domain(format!("{input} carries no Q/U forms")).into()),
        Loaded::Invariant(inv) => Ok(inv.forms),
    }
}
