//! The coboundary operator, 2-coboundaries B^2, second cohomology H^2, and
//! derivation spaces.
//!
//! Conventions, fixed once for the whole crate:
//! - An endomorphism phi is stored as the matrix (xi_ij) with
//!   phi(e_j) = sum_i xi_ij e_i (column convention).
//! - Z^2 is the space of all n x n matrices: row i of a [`CocycleMatrix`]
//!   holds theta(e_i, e_i) in coordinates. Its flattening is row-major, so
//!   matrix entry (i, k) sits at flat index i*n + k.
//!
//! On basis pairs the coboundary d(phi)(u,v) = phi(uv) - u phi(v) - phi(u) v
//! works out to
//!   d(phi)(e_i, e_j) = -sum_k (xi_ij w_ik + xi_ji w_jk) e_k     (i != j),
//!   d(phi)(e_i, e_i) = sum_k (sum_p w_ip xi_kp - 2 xi_ii w_ik) e_k,
//! so B^2 is computed in two stages: first the kernel K of the off-diagonal
//! vanishing constraints, then the image of K under the (linear) diagonal
//! part. This gives every coboundary an explicit preimage endomorphism.

use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalars::CycScalar;

/// Matrix (xi_ij) of an endomorphism, column convention.
pub type EndoMatrix = Matrix<CycScalar>;

/// Element of Z^2 as a structure matrix: row i = theta(e_i, e_i).
pub type CocycleMatrix = Matrix<CycScalar>;

/// Symmetric bilinear map theta given by components
/// `theta(e_i, e_j) = sum_k data[(i*n + j)*n + k] e_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct BilinearTensor {
    dim: usize,
    data: Vec<CycScalar>,
}

impl BilinearTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &CycScalar {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycScalar::is_zero)
    }

    /// Diagonal components as a cocycle matrix: row i = theta(e_i, e_i).
    pub fn diagonal_part(&self) -> CocycleMatrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |i, k| self.get(i, i, k).clone())
    }

    /// True iff every component on a pair of distinct basis vectors
    /// vanishes, i.e. the map lies in the cocycle space Z^2 and is fully
    /// described by [`BilinearTensor::diagonal_part`].
    pub fn is_cocycle(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n)
                .filter(|&j| j != i)
                .all(|j| (0..n).all(|k| self.get(i, j, k).is_zero()))
        })
    }
}

/// d(phi) evaluated on all basis pairs. Symmetric in (i, j) by construction.
pub fn coboundary(alg: &EvolutionAlgebra, phi: &EndoMatrix) -> BilinearTensor {
    let n = alg.dim();
    assert_eq!(phi.rows(), n, "endomorphism size must match the algebra");
    assert_eq!(phi.cols(), n, "endomorphism size must match the algebra");
    let mut data = vec![CycScalar::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = if i == j {
                    // phi(e_i^2) - 2 e_i phi(e_i)
                    let mut acc = CycScalar::zero();
                    for p in 0..n {
                        acc = acc.add_ref(&alg.omega(i, p).mul_ref(phi.get(k, p)));
                    }
                    let two = CycScalar::from_int(2);
                    acc.sub_ref(&two.mul_ref(&phi.get(i, i).mul_ref(alg.omega(i, k))))
                } else {
                    // -e_i phi(e_j) - phi(e_i) e_j
                    phi.get(i, j)
                        .mul_ref(alg.omega(i, k))
                        .add_ref(&phi.get(j, i).mul_ref(alg.omega(j, k)))
                        .neg_ref()
                };
                data[(i * n + j) * n + k] = c;
            }
        }
    }
    BilinearTensor { dim: n, data }
}

/// Coefficient matrix of the off-diagonal vanishing constraints
/// xi_ij w_ik + xi_ji w_jk = 0 over the n^2 flattened variables xi;
/// one row per (i < j, k).
pub fn offdiag_constraints(alg: &EvolutionAlgebra) -> Matrix<CycScalar> {
    let n = alg.dim();
    let mut rows = Vec::with_capacity(n * (n - 1) / 2 * n);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![CycScalar::zero(); n * n];
                row[i * n + j] = row[i * n + j].add_ref(alg.omega(i, k));
                row[j * n + i] = row[j * n + i].add_ref(alg.omega(j, k));
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zero(0, n * n);
    }
    Matrix::from_rows(rows)
}

/// Matrix of the diagonal part of the coboundary as a linear map on
/// flattened endomorphisms: row (i*n + k) carries
/// theta(e_i,e_i)_k = sum_p w_ip xi_kp - 2 w_ik xi_ii.
pub fn diagonal_map_matrix(alg: &EvolutionAlgebra) -> Matrix<CycScalar> {
    let n = alg.dim();
    let two = CycScalar::from_int(2);
    let mut m: Matrix<CycScalar> = Matrix::zero(n * n, n * n);
    for i in 0..n {
        for k in 0..n {
            let r = i * n + k;
            for p in 0..n {
                let v = m.get(r, k * n + p).add_ref(alg.omega(i, p));
                m.set(r, k * n + p, v);
            }
            let v = m.get(r, i * n + i).sub_ref(&two.mul_ref(alg.omega(i, k)));
            m.set(r, i * n + i, v);
        }
    }
    m
}

/// B^2(E) as a canonical subspace of the n^2-dimensional Z^2 space:
/// the image under the diagonal map of the off-diagonal-vanishing kernel.
pub fn b2_basis(alg: &EvolutionAlgebra) -> SubspaceBasis<CycScalar> {
    let n = alg.dim();
    let kernel = offdiag_constraints(alg).kernel_basis();
    let diag = diagonal_map_matrix(alg);
    let images = kernel
        .vectors()
        .iter()
        .map(|v| diag.matvec(v).expect("kernel vectors have length n^2"))
        .collect();
    SubspaceBasis::from_spanning(n * n, images)
}

/// B^2 together with dim H^2 = n^2 - dim B^2 and a canonical complement
/// basis: the coordinate matrices at the non-pivot flat indices of the
/// B^2 row-reduced basis.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub b2_basis: SubspaceBasis<CycScalar>,
    pub b2_dim: usize,
    pub h2_dim: usize,
    pub h2_representatives: Vec<CocycleMatrix>,
}

impl CohomologyReport {
    /// 1-based (row, column) positions of the complement representatives.
    pub fn representative_positions(&self) -> Vec<(usize, usize)> {
        self.h2_representatives
            .iter()
            .map(|m| {
                let n = m.rows();
                let flat = m
                    .flatten()
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("representatives are coordinate matrices");
                (flat / n + 1, flat % n + 1)
            })
            .collect()
    }
}

pub fn h2(alg: &EvolutionAlgebra) -> CohomologyReport {
    let n = alg.dim();
    let b2 = b2_basis(alg);
    let pivots = b2.pivots();
    let reps = (0..n * n)
        .filter(|f| !pivots.contains(f))
        .map(|f| {
            let mut m = Matrix::zero(n, n);
            m.set(f / n, f % n, CycScalar::one());
            m
        })
        .collect::<Vec<_>>();
    CohomologyReport {
        b2_dim: b2.dim(),
        h2_dim: n * n - b2.dim(),
        h2_representatives: reps,
        b2_basis: b2,
    }
}

/// Derivations {phi : d(phi) = 0}: the joint kernel of the off-diagonal
/// constraints and the diagonal map.
pub fn derivation_space(alg: &EvolutionAlgebra) -> SubspaceBasis<CycScalar> {
    let off = offdiag_constraints(alg);
    let diag = diagonal_map_matrix(alg);
    stack(&off, &diag).kernel_basis()
}

pub fn is_derivation(alg: &EvolutionAlgebra, phi: &EndoMatrix) -> bool {
    coboundary(alg, phi).is_zero()
}

/// An endomorphism phi with d(phi) off-diagonal zero and diagonal part
/// exactly `theta`, when one exists. Succeeds precisely on B^2 members.
pub fn b2_preimage(alg: &EvolutionAlgebra, theta: &CocycleMatrix) -> Result<Option<EndoMatrix>> {
    let n = alg.dim();
    if theta.rows() != n || theta.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "cocycle is {}x{}, algebra dim is {}",
            theta.rows(),
            theta.cols(),
            n
        )));
    }
    let off = offdiag_constraints(alg);
    let diag = diagonal_map_matrix(alg);
    let system = stack(&off, &diag);
    let mut rhs = vec![CycScalar::zero(); off.rows()];
    rhs.extend(theta.flatten());
    let solution = system.solve(&rhs)?;
    Ok(solution.map(|xi| Matrix::from_flat(n, n, xi)))
}

fn stack(top: &Matrix<CycScalar>, bottom: &Matrix<CycScalar>) -> Matrix<CycScalar> {
    assert_eq!(top.cols(), bottom.cols(), "stacked widths must agree");
    let mut rows = Vec::with_capacity(top.rows() + bottom.rows());
    for i in 0..top.rows() {
        rows.push(top.row(i).to_vec());
    }
    for i in 0..bottom.rows() {
        rows.push(bottom.row(i).to_vec());
    }
    Matrix::from_rows(rows)
}
