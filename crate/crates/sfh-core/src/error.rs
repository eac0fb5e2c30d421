//! Error type shared by every layer of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by parsing and by the mathematical operations.
///
/// Parse errors are distinguished from domain errors so that front ends can
/// map them to different exit statuses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text, with the 1-based line number where it occurred.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// Well-formed text that violates a semantic rule of its format.
    #[error("{0}")]
    Semantic(String),

    /// A diagram that fails one of its structural invariants.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// A generator that does not belong to the diagram it is used with.
    #[error("generator does not belong to this diagram: {0}")]
    ForeignGenerator(String),

    /// An operation that requires a surface diagram received a plain one.
    #[error("not a surface diagram: no quasipolygon is present")]
    NotSurfaceDiagram,

    /// The rank constraints admit no solution.
    #[error("rank constraints are infeasible: {0}")]
    Infeasible(String),

    /// An invariant whose ranks are not all determined was used where
    /// determined ranks are required.
    #[error("ranks are not fully determined: {0}")]
    UndeterminedRanks(String),

    /// Matrices or invariants whose dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A request that is mathematically meaningless for the given input.
    #[error("{0}")]
    Domain(String),
}

impl Error {
    /// Returns `true` when the error stems from malformed input text rather
    /// than from the mathematics.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Semantic(_))
    }

    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
