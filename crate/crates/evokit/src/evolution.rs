//! Evolution-algebra domain core: products in a natural basis, the
//! annihilator, the upper annihilating series, nilpotency type, and
//! regularity.
//!
//! An evolution algebra is presented by its structure matrix relative to a
//! natural basis: row i holds the coefficients of e_i^2, and e_i * e_j = 0
//! for i != j. Every invariant here is computed relative to that given
//! basis; the series rule is basis-local by definition (each term is a span
//! of basis vectors), so no basis canonicalization happens anywhere.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalars::CycScalar;

/// A finite-dimensional evolution algebra in a fixed natural basis.
#[derive(Clone, PartialEq, Debug)]
pub struct EvolutionAlgebra {
    dim: usize,
    structure: Matrix<CycScalar>,
    label: Option<String>,
}

impl EvolutionAlgebra {
    /// Wraps a square structure matrix; row i is e_i^2 in coordinates.
    pub fn new(structure: Matrix<CycScalar>) -> Result<Self> {
        if !structure.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "structure matrix must be square, got {}x{}",
                structure.rows(),
                structure.cols()
            )));
        }
        if structure.rows() == 0 {
            return Err(Error::BadDimension(0));
        }
        Ok(EvolutionAlgebra {
            dim: structure.rows(),
            structure,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &Matrix<CycScalar> {
        &self.structure
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Structure constant omega_ij: coefficient of e_j in e_i^2.
    pub fn omega(&self, i: usize, j: usize) -> &CycScalar {
        self.structure.get(i, j)
    }

    /// Coordinates of the i-th natural basis vector.
    pub fn basis_vector(&self, i: usize) -> Vec<CycScalar> {
        let mut v = vec![CycScalar::zero(); self.dim];
        v[i] = CycScalar::one();
        v
    }

    /// Bilinear product of coordinate vectors: since e_i e_j = 0 for i != j,
    /// the result is sum_i u_i v_i * (row i of the structure matrix).
    pub fn product(&self, u: &[CycScalar], v: &[CycScalar]) -> Vec<CycScalar> {
        assert_eq!(u.len(), self.dim, "left factor has wrong length");
        assert_eq!(v.len(), self.dim, "right factor has wrong length");
        let mut out = vec![CycScalar::zero(); self.dim];
        for i in 0..self.dim {
            let c = u[i].mul_ref(&v[i]);
            if c.is_zero() {
                continue;
            }
            for (k, w) in self.structure.row(i).iter().enumerate() {
                out[k] = out[k].add_ref(&c.mul_ref(w));
            }
        }
        out
    }

    /// ann(E) = span{e_i : e_i^2 = 0}, i.e. the zero structure rows.
    pub fn annihilator(&self) -> SubspaceBasis<CycScalar> {
        let idx = self.annihilator_indices();
        self.span_of_indices(&idx)
    }

    fn annihilator_indices(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.structure.row(i).iter().all(CycScalar::is_zero))
            .collect()
    }

    fn span_of_indices(&self, idx: &[usize]) -> SubspaceBasis<CycScalar> {
        SubspaceBasis::from_spanning(
            self.dim,
            idx.iter().map(|&i| self.basis_vector(i)).collect(),
        )
    }

    /// Upper annihilating series ann^1 <= ann^2 <= ... Each term is the span
    /// of the basis vectors whose square lies in the previous term, i.e. the
    /// rows with support inside the previous index set.
    pub fn ann_series(&self) -> AnnSeries {
        let mut member = vec![false; self.dim];
        for i in self.annihilator_indices() {
            member[i] = true;
        }
        let mut sets: Vec<Vec<usize>> = vec![indices_of(&member)];
        loop {
            let last = sets.last().expect("series is nonempty");
            if last.len() == self.dim {
                break; // reached the full space; absorbing, no witness needed
            }
            let next_member: Vec<bool> = (0..self.dim)
                .map(|i| {
                    self.structure
                        .row(i)
                        .iter()
                        .enumerate()
                        .all(|(j, w)| w.is_zero() || member[j])
                })
                .collect();
            let next = indices_of(&next_member);
            let stabilized = next.len() == last.len();
            member = next_member;
            sets.push(next);
            if stabilized {
                break; // duplicate term stored as the stabilization witness
            }
        }
        // Number of strictly increasing terms (dims measured from ann^0 = 0);
        // equals the number of parts of the type.
        let mut stabilized_at = 0;
        let mut prev = 0;
        for s in &sets {
            if s.len() > prev {
                stabilized_at += 1;
                prev = s.len();
            }
        }
        AnnSeries {
            subspaces: sets.iter().map(|s| self.span_of_indices(s)).collect(),
            stabilized_at,
        }
    }

    /// Type [n_1, ..., n_r]: the dimension jumps of the annihilating series.
    pub fn type_sequence(&self) -> TypeSeq {
        let series = self.ann_series();
        let mut parts = Vec::new();
        let mut prev = 0;
        for s in &series.subspaces {
            if s.dim() > prev {
                parts.push(s.dim() - prev);
                prev = s.dim();
            }
        }
        TypeSeq { parts }
    }

    /// Nilpotent iff the annihilating series reaches the whole space.
    pub fn is_nilpotent(&self) -> bool {
        self.ann_series()
            .subspaces
            .last()
            .expect("series is nonempty")
            .is_full()
    }

    /// dim E^2 = rank of the structure matrix (E^2 is spanned by the rows).
    pub fn square_dim(&self) -> usize {
        self.structure.rank()
    }

    /// Regular iff the structure matrix is non-singular.
    pub fn is_regular(&self) -> bool {
        self.square_dim() == self.dim
    }
}

fn indices_of(member: &[bool]) -> Vec<usize> {
    member
        .iter()
        .enumerate()
        .filter_map(|(i, &m)| if m { Some(i) } else { None })
        .collect()
}

/// The computed upper annihilating series.
///
/// Terms are strictly increasing in dimension, except that a series
/// stabilizing strictly below the full space stores the repeated term once
/// more as an explicit witness. `stabilized_at` is the number of strictly
/// increasing terms, which is also the number of parts of the type.
#[derive(Clone, PartialEq, Debug)]
pub struct AnnSeries {
    pub subspaces: Vec<SubspaceBasis<CycScalar>>,
    pub stabilized_at: usize,
}

impl AnnSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(SubspaceBasis::dim).collect()
    }
}

/// The type of an evolution algebra: positive dimension jumps of the series.
/// Sums to the dimension exactly when the algebra is nilpotent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeSeq {
    pub parts: Vec<usize>,
}

impl TypeSeq {
    pub fn new(parts: Vec<usize>) -> Self {
        TypeSeq { parts }
    }

    /// Lexicographic comparison after padding the shorter sequence with
    /// trailing zeros.
    pub fn lex_le(&self, other: &TypeSeq) -> bool {
        let len = self.parts.len().max(other.parts.len());
        for k in 0..len {
            let a = self.parts.get(k).copied().unwrap_or(0);
            let b = other.parts.get(k).copied().unwrap_or(0);
            if a != b {
                return a < b;
            }
        }
        true
    }
}

impl std::fmt::Display for TypeSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}
