//! Exact arithmetic for finite-dimensional evolution algebras: annihilator
//! series and nilpotency type, second cohomology (B^2, H^2), infinitesimal
//! deformations and their equivalence, and formal degenerations via basis
//! families over the Laurent field.
//!
//! All computation is exact over the eighth cyclotomic field Q(zeta_8) and
//! its Laurent extensions; nothing here uses floating point except the
//! explicitly approximate helpers on [`scalars::CycScalar`].

pub mod catalog;
pub mod cohomology;
pub mod deformation;
pub mod degeneration;
pub mod error;
pub mod evolution;
pub mod field;
pub mod linalg;
pub mod scalars;

pub use error::{Error, Result};
pub use field::{Field, Ring};
pub use linalg::{Matrix, SubspaceBasis};
pub use scalars::{CycScalar, LaurentPoly, RationalFn};
