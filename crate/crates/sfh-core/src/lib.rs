//! Sutured Floer homology of Seifert surface complements.
//!
//! This crate computes the relative-Spin^c-graded sutured Floer homology
//! group `SFH(S³(R))` of the complement of a Seifert surface `R`, starting
//! either from a disk-with-bands presentation of `R` or from a hand-built
//! balanced sutured Heegaard diagram, and uses the Seifert form and the
//! intersection form on difference classes to decide when two minimal-genus
//! Seifert surfaces cannot be isotopic.
//!
//! The pipeline is split into layers:
//!
//! * [`diagram`] — the combinatorial Heegaard-diagram model, generators,
//!   difference classes and the Spin^c partition.
//! * [`presentation`] and [`alexander`] — disk-with-bands presentations,
//!   Seifert and intersection matrices, the Alexander polynomial and the
//!   top knot Floer rank.
//! * [`builder`] — the stabilization-extremal surface diagram built from a
//!   presentation, and the decomposition along the quasipolygon.
//! * [`invariant`] — Euler data, rank solving and the assembled
//!   [`GradedInvariant`].
//! * [`equivalence`] and [`congruence`] — pairing tables, the bijection
//!   search that certifies inequivalence, connected sums, and the classical
//!   Seifert-form congruence baseline.
//! * [`fixtures`] and [`render`] — shipped data and textual rendering.
//!
//! # Example
//!
//! ```
//! use sfh_core::{fixtures, invariant::{compute_invariant, RankMode, Source}};
//!
//! let diagram = fixtures::diagram("8_3-R1").unwrap();
//! let inv = compute_invariant(Source::Diagram(&diagram), RankMode::Alternating).unwrap();
//! assert_eq!(inv.total_rank, 4);
//! assert_eq!(inv.classes.len(), 5);
//! ```

pub mod alexander;
pub mod builder;
pub mod congruence;
pub mod diagram;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod invariant;
pub mod linalg;
pub mod presentation;
pub mod render;
pub mod text;

pub use alexander::{alexander_polynomial, top_rank, LaurentCoefficients, TopRankMode};
pub use builder::{build_surface_diagram, decompose, BuildReport};
pub use congruence::{congruence_search, CongruenceOutcome, CongruenceWitness};
pub use diagram::{
    difference_class, enumerate_generators, outer_restrict, spinc_partition, validate_diagram,
    AnnotatedDiagram, Curve, FormPair, Generator, LatticeVector, PointAttrs, ValidationReport,
};
pub use equivalence::{connected_sum, distinguish, pairing_tables, DistinguishResult, Verdict};
pub use error::{Error, Result};
pub use invariant::{
    compute_invariant, euler_data, solve_ranks, ClassData, EulerData, GradedInvariant, Rank,
    RankMode,
};
pub use linalg::IntMatrix;
pub use presentation::{intersection_matrix, seifert_matrix, BandEnd, BandPresentation, Crossing};
