//! On-disk JSON formats.
//!
//! Two schemas, both square matrices of strings under the library's scalar
//! grammar: [`MatrixFile`] for algebras and infinitesimals (plain scalars —
//! rationals, `i`, `zeta`, `sqrt_i` — with `t` rejected) and [`FamilyFile`]
//! for one-parameter basis changes (Laurent polynomials in `t`).

use serde::{Deserialize, Serialize};

use evokit::degeneration::BasisChangeFamily;
use evokit::evolution::EvolutionAlgebra;
use evokit::scalars::{parse_laurent, parse_scalar};
use evokit::{CycScalar, LaurentPoly, Matrix, Ring};

use crate::{usage, UsageError};

/// Renders any matrix as rows of display strings; every scalar and Laurent
/// display form re-parses to the same value, so this is the dump direction
/// of a lossless round trip.
pub fn matrix_strings<F: Ring + std::fmt::Display>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn parse_rows<F: Ring>(
    dim: usize,
    rows: &[Vec<String>],
    parse: impl Fn(&str) -> evokit::Result<F>,
) -> Result<Matrix<F>, UsageError> {
    if rows.len() != dim {
        return Err(usage(format!(
            "matrix must be {dim}x{dim}: found {} rows",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(usage(format!(
                "matrix must be {dim}x{dim}: row {i} has {} entries",
                row.len()
            )));
        }
        for (j, text) in row.iter().enumerate() {
            flat.push(parse(text).map_err(|e| usage(format!("matrix[{i}][{j}] {text:?}: {e}")))?);
        }
    }
    Ok(Matrix::from_flat(dim, dim, flat))
}

/// An algebra or an infinitesimal: `{"dim": n, "matrix": [[scalar; n]; n],
/// "label": optional}`. Row i of the matrix holds the coordinates of the
/// square of the i-th natural basis vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixFile {
    pub fn from_algebra(alg: &EvolutionAlgebra) -> Self {
        MatrixFile {
            dim: alg.dim(),
            matrix: matrix_strings(alg.structure()),
            label: alg.label().map(str::to_owned),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix<CycScalar>, UsageError> {
        parse_rows(self.dim, &self.matrix, parse_scalar)
    }

    pub fn to_algebra(&self) -> Result<EvolutionAlgebra, UsageError> {
        let alg = EvolutionAlgebra::new(self.to_matrix()?)
            .map_err(|e| usage(format!("invalid algebra: {e}")))?;
        Ok(match &self.label {
            Some(l) => alg.with_label(l.clone()),
            None => alg,
        })
    }
}

/// A one-parameter basis change: same shape as [`MatrixFile`] but entries
/// are Laurent polynomials in `t`, and the matrix must be invertible over
/// the rational-function field.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyFile {
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FamilyFile {
    pub fn from_family(g: &BasisChangeFamily) -> Self {
        FamilyFile {
            dim: g.dim(),
            matrix: matrix_strings(g.matrix()),
            label: g.label().map(str::to_owned),
        }
    }

    pub fn to_family(&self) -> Result<BasisChangeFamily, UsageError> {
        let mat: Matrix<LaurentPoly> = parse_rows(self.dim, &self.matrix, parse_laurent)?;
        let fam =
            BasisChangeFamily::new(mat).map_err(|e| usage(format!("invalid basis family: {e}")))?;
        Ok(match &self.label {
            Some(l) => fam.with_label(l.clone()),
            None => fam,
        })
    }
}
