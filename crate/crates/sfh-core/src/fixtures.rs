//! Shipped example data.
//!
//! Diagrams: `8_3-R1` and `8_3-R2` (decomposed sutured diagrams of the two
//! genus-one Seifert surfaces of `8₃`) and `8_3-R1-surface`,
//! `8_3-R2-surface` (the same before decomposition). Presentations:
//! `8_3-R1`, `8_3-R2`, `trefoil`, `7_4-plus`, `7_4-plus-dual`.

use crate::diagram::{parse_diagram, AnnotatedDiagram};
use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, BandPresentation};

/// What a fixture contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    Diagram,
    Presentation,
}

/// A shipped fixture: name, kind and raw text.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub text: &'static str,
}

const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "8_3-R1",
        kind: FixtureKind::Diagram,
        text: include_str!("../fixtures/8_3-R1.diagram"),
    },
    Fixture {
        name: "8_3-R2",
        kind: FixtureKind::Diagram,
        text: include_str!("../fixtures/8_3-R2.diagram"),
    },
    Fixture {
        name: "8_3-R1-surface",
        kind: FixtureKind::Diagram,
        text: include_str!("../fixtures/8_3-R1-surface.diagram"),
    },
    Fixture {
        name: "8_3-R2-surface",
        kind: FixtureKind::Diagram,
        text: include_str!("../fixtures/8_3-R2-surface.diagram"),
    },
    Fixture {
        name: "8_3-R1",
        kind: FixtureKind::Presentation,
        text: include_str!("../fixtures/8_3-R1.presentation"),
    },
    Fixture {
        name: "8_3-R2",
        kind: FixtureKind::Presentation,
        text: include_str!("../fixtures/8_3-R2.presentation"),
    },
    Fixture {
        name: "trefoil",
        kind: FixtureKind::Presentation,
        text: include_str!("../fixtures/trefoil.presentation"),
    },
    Fixture {
        name: "7_4-plus",
        kind: FixtureKind::Presentation,
        text: include_str!("../fixtures/7_4-plus.presentation"),
    },
    Fixture {
        name: "7_4-plus-dual",
        kind: FixtureKind::Presentation,
        text: include_str!("../fixtures/7_4-plus-dual.presentation"),
    },
];

/// Every shipped fixture.
pub fn list() -> &'static [Fixture] {
    FIXTURES
}

fn find(name: &str, kind: FixtureKind) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name && f.kind == kind)
        .ok_or_else(|| {
            let what = match kind {
                FixtureKind::Diagram => "diagram",
                FixtureKind::Presentation => "presentation",
            };
            Error::Domain(format!("no {what} fixture named `{name}`"))
        })
}

/// A shipped diagram, parsed.
pub fn diagram(name: &str) -> Result<AnnotatedDiagram> {
    parse_diagram(find(name, FixtureKind::Diagram)?.text)
}

/// A shipped presentation, parsed.
pub fn presentation(name: &str) -> Result<BandPresentation> {
    parse_presentation(find(name, FixtureKind::Presentation)?.text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for f in list() {
            match f.kind {
                FixtureKind::Diagram => {
                    let d = diagram(f.name).unwrap();
                    assert!(crate::diagram::validate_diagram(&d).is_valid(), "{}", f.name);
                }
                FixtureKind::Presentation => {
                    presentation(f.name).unwrap();
                }
            }
        }
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(diagram("nope").is_err());
        assert!(presentation("8_3-R1-surface").is_err());
    }
}
