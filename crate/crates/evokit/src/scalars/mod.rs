//! Scalar tower: Q(zeta_8), Laurent polynomials in t, and reduced rational
//! functions, plus their shared text grammar and a real-root locator used to
//! warn about determinant vanishing inside (0, 1].

pub mod cyclotomic;
pub mod laurent;
pub mod parse;
pub mod polys;
pub mod ratfn;
pub mod realroots;

pub use cyclotomic::CycScalar;
pub use laurent::LaurentPoly;
pub use parse::{parse_laurent, parse_scalar};
pub use ratfn::RationalFn;
pub use realroots::{roots_in_unit_interval, Sqrt2Scalar};
