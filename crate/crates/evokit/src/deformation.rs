//! First-order deformations: triviality, equivalence, explicit endomorphism
//! witnesses, and the constructive nonrigidity certificate.
//!
//! At infinitesimal order everything reduces to membership in B^2: an
//! infinitesimal nu1 is trivial iff it is a 2-coboundary, and two are
//! equivalent iff their difference is. The witness solver exploits that the
//! first-order compatibility conditions on (xi_ij) are exactly "off-diagonal
//! coboundary components vanish" plus "diagonal part equals sigma - rho",
//! i.e. the same linear system that recovers B^2 preimages.

use crate::cohomology::{b2_basis, b2_preimage, h2, CocycleMatrix, EndoMatrix};
use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalars::CycScalar;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A formal deformation truncated at order 1: nu_t = mu + nu1 * t.
#[derive(Clone, PartialEq, Debug)]
pub struct FirstOrderDeformation {
    base: EvolutionAlgebra,
    nu1: CocycleMatrix,
}

impl FirstOrderDeformation {
    pub fn new(base: EvolutionAlgebra, nu1: CocycleMatrix) -> Result<Self> {
        if nu1.rows() != base.dim() || nu1.cols() != base.dim() {
            return Err(Error::ShapeMismatch(format!(
                "infinitesimal is {}x{}, base dim is {}",
                nu1.rows(),
                nu1.cols(),
                base.dim()
            )));
        }
        Ok(FirstOrderDeformation { base, nu1 })
    }

    pub fn base(&self) -> &EvolutionAlgebra {
        &self.base
    }

    pub fn nu1(&self) -> &CocycleMatrix {
        &self.nu1
    }
}

fn same_base(d1: &FirstOrderDeformation, d2: &FirstOrderDeformation) -> Result<()> {
    if d1.base.structure() != d2.base.structure() {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// Trivial iff nu1 is a 2-coboundary of the base.
pub fn is_trivial_infinitesimal(d: &FirstOrderDeformation) -> bool {
    b2_basis(&d.base).contains(&d.nu1.flatten())
}

/// Equivalent iff the difference of infinitesimals is a 2-coboundary.
pub fn infinitesimals_equivalent(
    d1: &FirstOrderDeformation,
    d2: &FirstOrderDeformation,
) -> Result<bool> {
    same_base(d1, d2)?;
    let diff = d2.nu1.sub(&d1.nu1)?;
    Ok(b2_basis(&d1.base).contains(&diff.flatten()))
}

/// The matrix (xi_ij) of a first-order equivalence morphism. Satisfies,
/// against the pair it was built from,
///   (1)  xi_ji w_jk + xi_ij w_ik = 0                       for i != j,
///   (2)  rho_ik + sum_p w_ip xi_kp = sigma_ik + 2 xi_ii w_ik,
/// where rho, sigma are the infinitesimals of the two deformations.
#[derive(Clone, PartialEq, Debug)]
pub struct EquivalenceWitness {
    xi: EndoMatrix,
}

impl EquivalenceWitness {
    /// Validates both condition families exactly before accepting.
    pub fn checked(
        d1: &FirstOrderDeformation,
        d2: &FirstOrderDeformation,
        xi: EndoMatrix,
    ) -> Result<Self> {
        if !conditions_hold(d1, d2, &xi) {
            return Err(Error::InternalContradiction(
                "candidate equivalence morphism fails re-substitution".into(),
            ));
        }
        Ok(EquivalenceWitness { xi })
    }

    pub fn xi(&self) -> &EndoMatrix {
        &self.xi
    }
}

fn conditions_hold(
    d1: &FirstOrderDeformation,
    d2: &FirstOrderDeformation,
    xi: &EndoMatrix,
) -> bool {
    let alg = &d1.base;
    let n = alg.dim();
    let two = CycScalar::from_int(2);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let lhs = xi
                    .get(j, i)
                    .mul_ref(alg.omega(j, k))
                    .add_ref(&xi.get(i, j).mul_ref(alg.omega(i, k)));
                if !lhs.is_zero() {
                    return false;
                }
            }
            let mut lhs = d1.nu1.get(i, k).clone();
            for p in 0..n {
                lhs = lhs.add_ref(&alg.omega(i, p).mul_ref(xi.get(k, p)));
            }
            let rhs = d2
                .nu1
                .get(i, k)
                .add_ref(&two.mul_ref(&xi.get(i, i).mul_ref(alg.omega(i, k))));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Solves the combined first-order system for xi; `None` when infeasible
/// (exactly when the infinitesimals are inequivalent).
pub fn equivalence_witness(
    d1: &FirstOrderDeformation,
    d2: &FirstOrderDeformation,
) -> Result<Option<EquivalenceWitness>> {
    same_base(d1, d2)?;
    let diff = d2.nu1.sub(&d1.nu1)?;
    match b2_preimage(&d1.base, &diff)? {
        None => Ok(None),
        Some(xi) => Ok(Some(EquivalenceWitness::checked(d1, d2, xi)?)),
    }
}

/// Which case of the nonrigidity construction produced the certificate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConstructionBranch {
    /// Regular base with some w_ii = 0: every coboundary has zero (i,i)
    /// entry there, so the coordinate matrix E_ii works.
    RegularZeroRow,
    /// Regular base with all w_ii != 0: dim B^2 <= n < n^2, so some
    /// coordinate matrix escapes; the first in row-major order is taken.
    RegularViolatingEntry,
    /// Nonregular base: first sign vector (b_1,...,b_n) in {+1,-1}^n, in
    /// lexicographic order from all +1, whose diag(b) is not a coboundary.
    NonregularSignVector,
}

impl std::fmt::Display for ConstructionBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConstructionBranch::RegularZeroRow => "regular-zero-row",
            ConstructionBranch::RegularViolatingEntry => "regular-violating-entry",
            ConstructionBranch::NonregularSignVector => "nonregular-sign-vector",
        };
        f.write_str(s)
    }
}

/// A first-order deformation certified nontrivial: its infinitesimal lies
/// outside B^2 of the base (re-verified at construction).
#[derive(Clone, Debug)]
pub struct NonrigidityCertificate {
    pub deformation: FirstOrderDeformation,
    pub construction_branch: ConstructionBranch,
    pub sign_vector: Option<Vec<i8>>,
}

/// Produces a nontrivial infinitesimal for any evolution algebra, following
/// the regular/nonregular case split. Deterministic: the nonregular branch
/// returns the lexicographically first failing sign vector even when
/// candidates are evaluated concurrently.
pub fn nontrivial_infinitesimal(alg: &EvolutionAlgebra) -> Result<NonrigidityCertificate> {
    let n = alg.dim();
    let b2 = b2_basis(alg);
    let coordinate = |i: usize, k: usize| -> CocycleMatrix {
        let mut m = Matrix::zero(n, n);
        m.set(i, k, CycScalar::one());
        m
    };

    if alg.is_regular() {
        if let Some(i) = (0..n).find(|&i| alg.omega(i, i).is_zero()) {
            let nu1 = coordinate(i, i);
            return certify(alg, &b2, nu1, ConstructionBranch::RegularZeroRow, None);
        }
        for i in 0..n {
            for k in 0..n {
                let nu1 = coordinate(i, k);
                if !b2.contains(&nu1.flatten()) {
                    return certify(
                        alg,
                        &b2,
                        nu1,
                        ConstructionBranch::RegularViolatingEntry,
                        None,
                    );
                }
            }
        }
        return Err(Error::InternalContradiction(
            "every coordinate matrix is a coboundary of a regular algebra".into(),
        ));
    }

    let signs_of = |mask: u64| -> Vec<i8> {
        // Leftmost component is the most significant bit; a set bit means -1,
        // so increasing masks enumerate {+1,-1}^n lexicographically from all +1.
        (0..n)
            .map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 })
            .collect()
    };
    let fails = |mask: &u64| -> bool {
        let diag = Matrix::diagonal(
            signs_of(*mask)
                .iter()
                .map(|&s| CycScalar::from_int(s as i64))
                .collect(),
        );
        !b2.contains(&diag.flatten())
    };

    #[cfg(feature = "parallel")]
    let found = (0u64..1 << n).into_par_iter().find_first(fails);
    #[cfg(not(feature = "parallel"))]
    let found = (0u64..1 << n).find(|m| fails(m));

    match found {
        Some(mask) => {
            let signs = signs_of(mask);
            let nu1 = Matrix::diagonal(
                signs
                    .iter()
                    .map(|&s| CycScalar::from_int(s as i64))
                    .collect(),
            );
            certify(
                alg,
                &b2,
                nu1,
                ConstructionBranch::NonregularSignVector,
                Some(signs),
            )
        }
        None => Err(Error::InternalContradiction(
            "every sign-vector diagonal is a coboundary of a nonregular algebra".into(),
        )),
    }
}

fn certify(
    alg: &EvolutionAlgebra,
    b2: &SubspaceBasis<CycScalar>,
    nu1: CocycleMatrix,
    branch: ConstructionBranch,
    sign_vector: Option<Vec<i8>>,
) -> Result<NonrigidityCertificate> {
    if b2.contains(&nu1.flatten()) {
        return Err(Error::InternalContradiction(
            "selected infinitesimal is a coboundary after all".into(),
        ));
    }
    Ok(NonrigidityCertificate {
        deformation: FirstOrderDeformation::new(alg.clone(), nu1)?,
        construction_branch: branch,
        sign_vector,
    })
}

/// Canonical complement representatives: the families mu + (sum a_j rep_j) t
/// enumerate the infinitesimal deformations up to equivalence.
pub fn infdef_representatives(alg: &EvolutionAlgebra) -> Vec<CocycleMatrix> {
    h2(alg).h2_representatives
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(rows: &[&[i64]]) -> EvolutionAlgebra {
        EvolutionAlgebra::new(Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycScalar::from_int(x)).collect())
                .collect(),
        ))
        .unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix<CycScalar> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycScalar::from_int(x)).collect())
                .collect(),
        )
    }

    fn idempotent_plus_null() -> EvolutionAlgebra {
        alg(&[&[1, 0], &[0, 0]])
    }

    #[test]
    fn zero_infinitesimal_is_trivial() {
        let d = FirstOrderDeformation::new(idempotent_plus_null(), Matrix::zero(2, 2)).unwrap();
        assert!(is_trivial_infinitesimal(&d));
    }

    #[test]
    fn triviality_is_b2_membership() {
        let base = idempotent_plus_null();
        let inside = FirstOrderDeformation::new(base.clone(), mat(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(is_trivial_infinitesimal(&inside));
        let outside = FirstOrderDeformation::new(base, mat(&[&[0, 0], &[1, 0]])).unwrap();
        assert!(!is_trivial_infinitesimal(&outside));
    }

    #[test]
    fn equivalence_examples() {
        let base = idempotent_plus_null();
        let d1 = FirstOrderDeformation::new(base.clone(), mat(&[&[0, 0], &[1, 0]])).unwrap();
        let d2 = FirstOrderDeformation::new(base.clone(), mat(&[&[1, 0], &[1, 0]])).unwrap();
        let d3 = FirstOrderDeformation::new(base.clone(), mat(&[&[0, 0], &[2, 0]])).unwrap();
        assert!(infinitesimals_equivalent(&d1, &d1).unwrap());
        assert!(infinitesimals_equivalent(&d1, &d2).unwrap());
        assert!(!infinitesimals_equivalent(&d1, &d3).unwrap());

        let other =
            FirstOrderDeformation::new(alg(&[&[0, 1], &[0, 0]]), Matrix::zero(2, 2)).unwrap();
        assert!(matches!(
            infinitesimals_equivalent(&d1, &other),
            Err(Error::BaseMismatch)
        ));
    }

    #[test]
    fn witness_for_equivalent_pair() {
        let base = idempotent_plus_null();
        let d1 = FirstOrderDeformation::new(base.clone(), mat(&[&[0, 0], &[1, 0]])).unwrap();
        let d2 = FirstOrderDeformation::new(base.clone(), mat(&[&[1, 0], &[1, 0]])).unwrap();
        let w = equivalence_witness(&d1, &d2).unwrap().expect("equivalent");
        assert_eq!(*w.xi().get(0, 0), CycScalar::from_int(-1));
        assert!(conditions_hold(&d1, &d2, w.xi()));

        // Reflexive pair: the zero morphism satisfies both families.
        let w0 = equivalence_witness(&d1, &d1).unwrap().expect("reflexive");
        assert_eq!(*w0.xi(), Matrix::zero(2, 2));
    }

    #[test]
    fn no_witness_for_inequivalent_pair() {
        let base = idempotent_plus_null();
        let d1 = FirstOrderDeformation::new(base.clone(), mat(&[&[0, 0], &[1, 0]])).unwrap();
        let d3 = FirstOrderDeformation::new(base, mat(&[&[0, 0], &[2, 0]])).unwrap();
        assert!(equivalence_witness(&d1, &d3).unwrap().is_none());
    }

    #[test]
    fn nonrigidity_nonregular_takes_first_sign_vector() {
        // e_1^2 = e_2, e_2^2 = 0 is nonregular; B^2 = span{[[0,1],[0,0]]},
        // so the all-plus vector already escapes.
        let cert = nontrivial_infinitesimal(&alg(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(
            cert.construction_branch,
            ConstructionBranch::NonregularSignVector
        );
        assert_eq!(cert.sign_vector, Some(vec![1, 1]));
        assert_eq!(*cert.deformation.nu1(), mat(&[&[1, 0], &[0, 1]]));
        assert!(!is_trivial_infinitesimal(&cert.deformation));
    }

    #[test]
    fn nonrigidity_regular_with_all_diagonal_nonzero() {
        // Identity structure matrix: B^2 is the diagonal matrices, so the
        // first escaping coordinate matrix is E_12.
        let cert = nontrivial_infinitesimal(&alg(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            cert.construction_branch,
            ConstructionBranch::RegularViolatingEntry
        );
        assert_eq!(*cert.deformation.nu1(), mat(&[&[0, 1], &[0, 0]]));
        assert!(cert.sign_vector.is_none());
    }

    #[test]
    fn nonrigidity_regular_with_zero_diagonal_entry() {
        // e_1^2 = e_2, e_2^2 = e_1: regular with w_11 = 0, so E_11 works.
        let cert = nontrivial_infinitesimal(&alg(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(cert.construction_branch, ConstructionBranch::RegularZeroRow);
        assert_eq!(*cert.deformation.nu1(), mat(&[&[1, 0], &[0, 0]]));
        assert!(!is_trivial_infinitesimal(&cert.deformation));
    }

    #[test]
    fn one_dimensional_regular_algebra_contradicts_construction() {
        // B^2 of (e_1^2 = e_1) is the whole 1-dimensional Z^2, so no
        // coordinate matrix escapes; the theorem's construction cannot apply.
        let a = alg(&[&[1]]);
        assert!(matches!(
            nontrivial_infinitesimal(&a),
            Err(Error::InternalContradiction(_))
        ));
    }

    #[test]
    fn representatives_match_expected_positions() {
        // e_1^2 = e_2, e_2^2 = e_1 + a_4 e_2 at a_4 = 1.
        let a = alg(&[&[0, 1], &[1, 1]]);
        let reps = infdef_representatives(&a);
        let positions: Vec<(usize, usize)> = reps
            .iter()
            .map(|m| {
                let f = m.flatten().iter().position(|c| !c.is_zero()).unwrap();
                (f / 2 + 1, f % 2 + 1)
            })
            .collect();
        assert_eq!(positions, vec![(1, 1), (2, 2)]);
    }
}
