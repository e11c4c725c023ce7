//! Crate-wide error type.
//!
//! Every fallible operation returns `Result<T, Error>`; variants map 1:1 to
//! the failure classes surfaced by the CLI (domain failures vs. input errors).

use thiserror::Error;

/// Errors produced by evokit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion of the zero element of a field.
    #[error("division by zero")]
    DivisionByZero,

    /// Malformed scalar / Laurent text. `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A square matrix with no inverse over its entry field.
    #[error("singular matrix")]
    SingularMatrix,

    /// A basis-change family whose determinant is the zero rational function.
    #[error("singular family: determinant vanishes identically")]
    SingularFamily,

    /// Operand shapes are incompatible.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// t -> 0 limit requested for a rational function of negative valuation.
    /// Entries are (row, col, valuation), 0-based, for matrix-level limits;
    /// a scalar-level failure reports a single entry at (0, 0).
    #[error("no limit at t=0: {} entr{} of negative valuation", .entries.len(), if .entries.len() == 1 { "y" } else { "ies" })]
    NoLimit { entries: Vec<(usize, usize, i64)> },

    /// Two deformations over different base algebras.
    #[error("base algebras differ")]
    BaseMismatch,

    /// Two algebras of different dimension where equal dimension is required.
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    /// Catalog lookup for a label that does not exist.
    #[error("unknown catalog label: {0}")]
    UnknownLabel(String),

    /// A dimension outside the supported range of an operation.
    #[error("unsupported dimension: {0}")]
    BadDimension(usize),

    /// A constructive theorem failed to produce its guaranteed output;
    /// indicates a bug, never expected on valid inputs.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
