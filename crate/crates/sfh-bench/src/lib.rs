//! Benchmarks for the pipeline; see `benches/pipeline.rs`.
//!
//! The library only exposes the inputs the benchmarks share.

use sfh_core::{fixtures, AnnotatedDiagram, BandPresentation};

/// The decomposed diagram of the first genus-one surface of `8₃`.
pub fn r1_diagram() -> AnnotatedDiagram {
    fixtures::diagram("8_3-R1").expect("shipped fixture")
}

/// A shipped presentation by name.
pub fn presentation(name: &str) -> BandPresentation {
    fixtures::presentation(name).expect("shipped fixture")
}
