//! Built-in library of small evolution algebras and degeneration data.
//!
//! Three data sets live here, all embedded as literals so they can be
//! reviewed line by line:
//!
//! * the nilpotent algebras of dimension at most four (labels `mu_<n>_<k>`),
//!   each with its published type and derived-subalgebra dimension;
//! * the two-dimensional algebras `E1`..`E4` and the parametric families
//!   `E5(a2,a3)`, `E6(a4)`, each with its coboundary-space generators and the
//!   positions of the free parameters in its deformation normal form;
//! * explicit one-parameter basis changes witnessing every edge of the
//!   degeneration Hasse diagrams in dimensions two, three and four, plus
//!   batch verification over them.
//!
//! Everything is read-only: lookups rebuild entries on demand (construction
//! is a handful of small exact matrices), so the module holds no state.

use std::collections::BTreeMap;
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::degeneration::{
    obstructions, verify_degeneration_with, BasisChangeFamily, DegenerationStatus, MatchPolicy,
    ObstructionReport,
};
use crate::error::{Error, Result};
use crate::evolution::{EvolutionAlgebra, TypeSeq};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalars::{parse_scalar, CycScalar, LaurentPoly};

/// Invariants recorded alongside a catalog entry. `None`/empty fields carry
/// no claim; set fields must agree with live recomputation on the entry's
/// algebra (asserted by the test suite, not at construction).
#[derive(Clone, Debug, Default)]
pub struct ExpectedInvariants {
    pub type_seq: Option<TypeSeq>,
    /// Dimension of the span of all products.
    pub square_dim: Option<usize>,
    pub b2_dim: Option<usize>,
    pub h2_dim: Option<usize>,
    /// Coboundary matrices (row i = coordinates of the image of (e_i, e_i)).
    /// When `b2_contains_only` is false they span the coboundary space
    /// exactly; otherwise they are only guaranteed to lie inside it (the
    /// parametric families lose span-exactness on their singular locus,
    /// where the space grows).
    pub b2_generators: Vec<Matrix<CycScalar>>,
    pub b2_contains_only: bool,
    /// 1-based (row, col) positions of the free parameters in the
    /// infinitesimal-deformation normal form; equals the positions of the
    /// cohomology representatives.
    pub infdef_positions: Vec<(usize, usize)>,
}

/// One catalog algebra: a label, the algebra itself, the parameter values it
/// was instantiated at (parametric families only), and its recorded
/// invariants.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub algebra: EvolutionAlgebra,
    pub parameters: Option<BTreeMap<String, CycScalar>>,
    pub expected: ExpectedInvariants,
}

/// An explicit degeneration witness: the family `family` carries the algebra
/// labelled `from_label` onto the one labelled `to_label` in the limit.
#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub from_label: String,
    pub to_label: String,
    pub family: BasisChangeFamily,
}

/// Outcome of re-verifying one witness.
#[derive(Clone, Debug)]
pub struct WitnessOutcome {
    pub from_label: String,
    pub to_label: String,
    pub status: DegenerationStatus,
    pub warnings: Vec<String>,
}

/// Batch verification result; `verified == total` exactly when every witness
/// re-verified.
#[derive(Clone, Debug)]
pub struct VerifySummary {
    pub outcomes: Vec<WitnessOutcome>,
    pub verified: usize,
    pub total: usize,
}

impl VerifySummary {
    pub fn all_verified(&self) -> bool {
        self.verified == self.total
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{} -> {}: {}", o.from_label, o.to_label, o.status)?;
            for w in &o.warnings {
                writeln!(f, "  warning: {w}")?;
            }
        }
        write!(f, "{}/{} verified", self.verified, self.total)
    }
}

/// One Hasse-diagram edge together with the family used to certify it.
#[derive(Clone, Debug)]
pub struct HasseEdge {
    pub from_label: String,
    pub to_label: String,
    pub family: BasisChangeFamily,
}

fn cyc(n: i64) -> CycScalar {
    CycScalar::from_int(n)
}

fn cyc_matrix(rows: &[&[i64]]) -> Matrix<CycScalar> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| cyc(x)).collect())
            .collect(),
    )
}

fn algebra(label: &str, structure: Matrix<CycScalar>) -> EvolutionAlgebra {
    EvolutionAlgebra::new(structure)
        .expect("catalog structure matrices are square and nonempty")
        .with_label(label)
}

fn nilpotent_entry(
    label: &str,
    rows: &[&[i64]],
    type_parts: &[usize],
    square_dim: usize,
) -> CatalogEntry {
    CatalogEntry {
        label: label.to_string(),
        algebra: algebra(label, cyc_matrix(rows)),
        parameters: None,
        expected: ExpectedInvariants {
            type_seq: Some(TypeSeq::new(type_parts.to_vec())),
            square_dim: Some(square_dim),
            ..ExpectedInvariants::default()
        },
    }
}

/// The nilpotent algebras of dimension at most four, one entry per
/// isomorphism class. Comments give the product on the natural basis; all
/// omitted squares are zero.
pub fn nilpotent_entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        // e1^2 = 0
        nilpotent_entry("mu_1_1", &[&[0]], &[1], 0),
        // e1^2 = e2^2 = 0
        nilpotent_entry("mu_2_1", &[&[0, 0], &[0, 0]], &[2], 0),
        // e1^2 = e2
        nilpotent_entry("mu_2_2", &[&[0, 1], &[0, 0]], &[1, 1], 1),
        // e1^2 = e2^2 = e3^2 = 0
        nilpotent_entry("mu_3_1", &[&[0; 3], &[0; 3], &[0; 3]], &[3], 0),
        // e1^2 = e2
        nilpotent_entry("mu_3_2", &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]], &[2, 1], 1),
        // e1^2 = e2^2 = e3
        nilpotent_entry("mu_3_3", &[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]], &[1, 2], 1),
        // e1^2 = e2, e2^2 = e3
        nilpotent_entry(
            "mu_3_4",
            &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]],
            &[1, 1, 1],
            2,
        ),
        // e1^2 = e2^2 = e3^2 = e4^2 = 0
        nilpotent_entry("mu_4_1", &[&[0; 4], &[0; 4], &[0; 4], &[0; 4]], &[4], 0),
        // e1^2 = e2
        nilpotent_entry(
            "mu_4_2",
            &[&[0, 1, 0, 0], &[0; 4], &[0; 4], &[0; 4]],
            &[3, 1],
            1,
        ),
        // e1^2 = e2^2 = e3
        nilpotent_entry(
            "mu_4_3",
            &[&[0, 0, 1, 0], &[0, 0, 1, 0], &[0; 4], &[0; 4]],
            &[2, 2],
            1,
        ),
        // e1^2 = e3, e2^2 = e4
        nilpotent_entry(
            "mu_4_4",
            &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0; 4], &[0; 4]],
            &[2, 2],
            2,
        ),
        // e1^2 = e2, e2^2 = e4
        nilpotent_entry(
            "mu_4_5",
            &[&[0, 1, 0, 0], &[0, 0, 0, 1], &[0; 4], &[0; 4]],
            &[2, 1, 1],
            2,
        ),
        // e1^2 = e2^2 = e3^2 = e4
        nilpotent_entry(
            "mu_4_6",
            &[&[0, 0, 0, 1], &[0, 0, 0, 1], &[0, 0, 0, 1], &[0; 4]],
            &[1, 3],
            1,
        ),
        // e1^2 = e2, e2^2 = e3^2 = e4
        nilpotent_entry(
            "mu_4_7",
            &[&[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 1], &[0; 4]],
            &[1, 2, 1],
            2,
        ),
        // e1^2 = e2 + i e3, e2^2 = e3^2 = e4 (the i is patched in below)
        nilpotent_entry(
            "mu_4_8",
            &[&[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 1], &[0; 4]],
            &[1, 2, 1],
            2,
        ),
        // e1^2 = e2^2 = e3, e3^2 = e4
        nilpotent_entry(
            "mu_4_9",
            &[&[0, 0, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0; 4]],
            &[1, 1, 2],
            2,
        ),
        // e1^2 = e3, e2^2 = e3 + e4, e3^2 = e4
        nilpotent_entry(
            "mu_4_10",
            &[&[0, 0, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1], &[0; 4]],
            &[1, 1, 2],
            2,
        ),
        // e1^2 = e2, e2^2 = e3, e3^2 = e4
        nilpotent_entry(
            "mu_4_11",
            &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0; 4]],
            &[1, 1, 1, 1],
            3,
        ),
        // e1^2 = e2 + e3, e2^2 = e3, e3^2 = e4
        nilpotent_entry(
            "mu_4_12",
            &[&[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0; 4]],
            &[1, 1, 1, 1],
            3,
        ),
    ];
    let mu_4_8 = out
        .iter_mut()
        .find(|e| e.label == "mu_4_8")
        .expect("mu_4_8 present");
    let mut structure = mu_4_8.algebra.structure().clone();
    structure.set(0, 2, CycScalar::i());
    mu_4_8.algebra = algebra("mu_4_8", structure);
    out
}

fn family_entry(
    label: String,
    structure: Matrix<CycScalar>,
    parameters: Option<BTreeMap<String, CycScalar>>,
    expected: ExpectedInvariants,
) -> CatalogEntry {
    CatalogEntry {
        algebra: algebra(&label, structure),
        label,
        parameters,
        expected,
    }
}

fn gens(mats: &[Matrix<CycScalar>]) -> Vec<Matrix<CycScalar>> {
    mats.to_vec()
}

/// `E5(a2,a3)`: e1^2 = e1 + a2 e2, e2^2 = a3 e1 + e2. The recorded
/// coboundary generators span the whole space exactly when 1 - a2 a3 != 0
/// (i.e. when the structure matrix is invertible); on the singular locus the
/// space is strictly larger and only containment is claimed, with full data
/// recorded at the sampled point (1,1).
pub fn e5_entry(a2: CycScalar, a3: CycScalar) -> CatalogEntry {
    let one = CycScalar::one();
    let structure = Matrix::from_rows(vec![
        vec![one.clone(), a2.clone()],
        vec![a3.clone(), one.clone()],
    ]);
    let g1 = Matrix::from_rows(vec![
        vec![cyc(-1), a2.mul_ref(&cyc(-2))],
        vec![a3.clone(), cyc(0)],
    ]);
    let g2 = Matrix::from_rows(vec![
        vec![cyc(0), a2.clone()],
        vec![a3.mul_ref(&cyc(-2)), cyc(-1)],
    ]);
    let regular = !one.sub_ref(&a2.mul_ref(&a3)).is_zero();
    let expected = if regular {
        let infdef_positions = if !a2.is_zero() {
            vec![(2, 1), (2, 2)]
        } else if a3.is_zero() {
            vec![(1, 2), (2, 1)]
        } else {
            vec![(1, 2), (2, 2)]
        };
        ExpectedInvariants {
            b2_dim: Some(2),
            h2_dim: Some(2),
            b2_generators: gens(&[g1, g2]),
            infdef_positions,
            ..ExpectedInvariants::default()
        }
    } else if a2 == one && a3 == one {
        ExpectedInvariants {
            b2_dim: Some(3),
            h2_dim: Some(1),
            b2_generators: gens(&[g1, g2]),
            b2_contains_only: true,
            infdef_positions: vec![(2, 2)],
            ..ExpectedInvariants::default()
        }
    } else {
        ExpectedInvariants {
            b2_generators: gens(&[g1, g2]),
            b2_contains_only: true,
            ..ExpectedInvariants::default()
        }
    };
    let label = format!("E5({},{})", a2, a3);
    let parameters = BTreeMap::from([("a2".to_string(), a2), ("a3".to_string(), a3)]);
    family_entry(label, structure, Some(parameters), expected)
}

/// `E6(a4)`: e1^2 = e2, e2^2 = e1 + a4 e2. Regular for every a4.
pub fn e6_entry(a4: CycScalar) -> CatalogEntry {
    let structure = Matrix::from_rows(vec![vec![cyc(0), cyc(1)], vec![cyc(1), a4.clone()]]);
    let g1 = Matrix::from_rows(vec![vec![cyc(0), cyc(1)], vec![cyc(-2), a4.neg_ref()]]);
    let g2 = cyc_matrix(&[&[0, -2], &[1, 0]]);
    let expected = ExpectedInvariants {
        b2_dim: Some(2),
        h2_dim: Some(2),
        b2_generators: gens(&[g1, g2]),
        infdef_positions: vec![(1, 1), (2, 2)],
        ..ExpectedInvariants::default()
    };
    let label = format!("E6({})", a4);
    let parameters = BTreeMap::from([("a4".to_string(), a4)]);
    family_entry(label, structure, Some(parameters), expected)
}

/// The two-dimensional algebras with recorded coboundary data: the four
/// isolated ones and the default parameter samples of the two families,
/// chosen to hit every branch of the deformation case split (`E5` case 1 at
/// (1,0), case 2 at (0,0), case 3 at (0,1), plus the singular locus at
/// (1,1)).
pub fn two_dimensional_entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        // E1: e1^2 = e1.
        family_entry(
            "E1".to_string(),
            cyc_matrix(&[&[1, 0], &[0, 0]]),
            None,
            ExpectedInvariants {
                b2_dim: Some(2),
                h2_dim: Some(2),
                b2_generators: gens(&[
                    cyc_matrix(&[&[1, 0], &[0, 0]]),
                    cyc_matrix(&[&[0, 1], &[0, 0]]),
                ]),
                infdef_positions: vec![(2, 1), (2, 2)],
                ..ExpectedInvariants::default()
            },
        ),
        // E2: e1^2 = e2^2 = e1.
        family_entry(
            "E2".to_string(),
            cyc_matrix(&[&[1, 0], &[1, 0]]),
            None,
            ExpectedInvariants {
                b2_dim: Some(3),
                h2_dim: Some(1),
                b2_generators: gens(&[
                    cyc_matrix(&[&[-1, 0], &[1, 0]]),
                    cyc_matrix(&[&[0, 1], &[0, 1]]),
                    cyc_matrix(&[&[0, 0], &[-2, 0]]),
                ]),
                infdef_positions: vec![(2, 2)],
                ..ExpectedInvariants::default()
            },
        ),
        // E3: e1^2 = -e2^2 = e1 + e2.
        family_entry(
            "E3".to_string(),
            cyc_matrix(&[&[1, 1], &[-1, -1]]),
            None,
            ExpectedInvariants {
                b2_dim: Some(2),
                h2_dim: Some(2),
                b2_generators: gens(&[
                    cyc_matrix(&[&[1, 1], &[-1, -1]]),
                    cyc_matrix(&[&[0, 1], &[2, 1]]),
                ]),
                infdef_positions: vec![(2, 1), (2, 2)],
                ..ExpectedInvariants::default()
            },
        ),
        // E4: e1^2 = e2 (same algebra as mu_2_2, kept under both labels).
        family_entry(
            "E4".to_string(),
            cyc_matrix(&[&[0, 1], &[0, 0]]),
            None,
            ExpectedInvariants {
                type_seq: Some(TypeSeq::new(vec![1, 1])),
                square_dim: Some(1),
                b2_dim: Some(1),
                h2_dim: Some(3),
                b2_generators: gens(&[cyc_matrix(&[&[0, 1], &[0, 0]])]),
                infdef_positions: vec![(1, 1), (2, 1), (2, 2)],
                ..ExpectedInvariants::default()
            },
        ),
    ];
    for (a2, a3) in [(1, 0), (1, 1), (0, 0), (0, 1)] {
        out.push(e5_entry(cyc(a2), cyc(a3)));
    }
    for a4 in [0, 1] {
        out.push(e6_entry(cyc(a4)));
    }
    out
}

/// Three two-dimensional algebras used throughout the worked degeneration
/// examples: the regular diagonal one, the idempotent-plus-zero one (= `E1`)
/// and the nilpotent one (= `mu_2_2`). Kept as their own labels so the
/// examples read verbatim.
pub fn example_entries() -> Vec<CatalogEntry> {
    [
        ("ex1_mu1", [[1, 0], [0, 1]]),
        ("ex1_mu2", [[1, 0], [0, 0]]),
        ("ex1_mu3", [[0, 1], [0, 0]]),
    ]
    .into_iter()
    .map(|(label, rows)| {
        family_entry(
            label.to_string(),
            cyc_matrix(&[&rows[0], &rows[1]]),
            None,
            ExpectedInvariants::default(),
        )
    })
    .collect()
}

/// Every built-in entry, in catalog order: nilpotent classification, then
/// the two-dimensional family samples, then the worked-example aliases.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut out = nilpotent_entries();
    out.extend(two_dimensional_entries());
    out.extend(example_entries());
    out
}

/// Looks up `label`. Fixed labels (`mu_3_4`, `E1`, `ex1_mu2`, ...) must match
/// exactly; the parametric families accept any scalar arguments in the label
/// itself, e.g. `E5(1,0)`, `E5(1/2,zeta^2)` or `E6(-1)`.
pub fn get(label: &str) -> Result<CatalogEntry> {
    if let Some(args) = family_args(label, "E5")? {
        if let [a2, a3] = args.as_slice() {
            return Ok(e5_entry(a2.clone(), a3.clone()));
        }
        return Err(Error::UnknownLabel(format!(
            "{label} (E5 takes exactly two parameters)"
        )));
    }
    if let Some(args) = family_args(label, "E6")? {
        if let [a4] = args.as_slice() {
            return Ok(e6_entry(a4.clone()));
        }
        return Err(Error::UnknownLabel(format!(
            "{label} (E6 takes exactly one parameter)"
        )));
    }
    all_entries()
        .into_iter()
        .find(|e| e.label == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// Parses `name(arg,...)` labels; returns None when `label` does not start
/// with `name(`, and a parse error when it does but an argument is
/// malformed.
fn family_args(label: &str, name: &str) -> Result<Option<Vec<CycScalar>>> {
    let Some(rest) = label.strip_prefix(name) else {
        return Ok(None);
    };
    let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) else {
        return Ok(None);
    };
    inner
        .split(',')
        .map(|piece| parse_scalar(piece.trim()))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Diagonal family diag(c_1 t^{e_1}, ..., c_n t^{e_n}) with extra monomial
/// terms c t^k at the given 0-based positions.
fn family(
    label: &str,
    diag: &[(CycScalar, i64)],
    extra: &[(usize, usize, CycScalar, i64)],
) -> BasisChangeFamily {
    let n = diag.len();
    let mut m: Matrix<LaurentPoly> = Matrix::zero(n, n);
    for (i, (c, e)) in diag.iter().enumerate() {
        m.set(i, i, LaurentPoly::monomial(c.clone(), *e));
    }
    for (i, j, c, k) in extra {
        let v = m.get(*i, *j).add_ref(&LaurentPoly::monomial(c.clone(), *k));
        m.set(*i, *j, v);
    }
    BasisChangeFamily::new(m)
        .expect("catalog families have nonzero determinant")
        .with_label(label)
}

fn diag_t(exps: &[i64]) -> Vec<(CycScalar, i64)> {
    exps.iter().map(|&e| (CycScalar::one(), e)).collect()
}

fn witness(
    from: &str,
    to: &str,
    diag: &[(CycScalar, i64)],
    extra: &[(usize, usize, CycScalar, i64)],
) -> WitnessEntry {
    WitnessEntry {
        from_label: from.to_string(),
        to_label: to.to_string(),
        family: family(&format!("{from}->{to}"), diag, extra),
    }
}

/// The explicit degeneration witnesses: three in dimension three and
/// thirteen in dimension four. Every entry re-verifies, though five of the
/// recorded transformations reach their target only after a relabelling of
/// the natural basis (the limit algebra is isomorphic, not entrywise equal),
/// so batch verification matches up to permutation and flags those outcomes
/// with a warning.
pub fn witnesses() -> Vec<WitnessEntry> {
    let one = CycScalar::one;
    let i = CycScalar::i;
    vec![
        // diag(1, t, t^2) + E_32
        witness("mu_3_4", "mu_3_3", &diag_t(&[0, 1, 2]), &[(2, 1, one(), 0)]),
        // diag(t, 1, t^2)
        witness("mu_3_3", "mu_3_2", &diag_t(&[1, 0, 2]), &[]),
        // diag(1, t, t^2)
        witness("mu_3_4", "mu_3_2", &diag_t(&[0, 1, 2]), &[]),
        // diag(t, t^2, t^4, t^8)
        witness("mu_4_12", "mu_4_11", &diag_t(&[1, 2, 4, 8]), &[]),
        // diag(t^-1, t^-1, t^-2, t^-4) - t^-2 E_42 + t^-2 E_43
        witness(
            "mu_4_12",
            "mu_4_10",
            &diag_t(&[-1, -1, -2, -4]),
            &[(3, 1, cyc(-1), -2), (3, 2, one(), -2)],
        ),
        // diag(sqrt(i) t^-1, i t^-2, -t^-2, t^-4) + t^-4 E_42 - t^-4 E_43
        witness(
            "mu_4_12",
            "mu_4_8",
            &[
                (CycScalar::sqrt_i(), -1),
                (i(), -2),
                (cyc(-1), -2),
                (one(), -4),
            ],
            &[(3, 1, one(), -4), (3, 2, cyc(-1), -4)],
        ),
        // diag(1, 1, t, t^2) + E_43
        witness(
            "mu_4_11",
            "mu_4_7",
            &diag_t(&[0, 0, 1, 2]),
            &[(3, 2, one(), 0)],
        ),
        // diag(t, t, t^2, t^4)
        witness("mu_4_10", "mu_4_9", &diag_t(&[1, 1, 2, 4]), &[]),
        // diag(1, 1, t, t^2) + E_43
        witness(
            "mu_4_9",
            "mu_4_6",
            &diag_t(&[0, 0, 1, 2]),
            &[(3, 2, one(), 0)],
        ),
        // diag(t, t^3, t^3, t^6) - i t^2 E_43
        witness(
            "mu_4_8",
            "mu_4_6",
            &diag_t(&[1, 3, 3, 6]),
            &[(3, 2, i().neg_ref(), 2)],
        ),
        // diag(1, t, t, t^2) + E_42
        witness(
            "mu_4_7",
            "mu_4_6",
            &diag_t(&[0, 1, 1, 2]),
            &[(3, 1, one(), 0)],
        ),
        // diag(t, t^2, 1, t^4)
        witness("mu_4_7", "mu_4_5", &diag_t(&[1, 2, 0, 4]), &[]),
        // diag(t^2, t^2, 1, t^4)
        witness("mu_4_6", "mu_4_3", &diag_t(&[2, 2, 0, 4]), &[]),
        // diag(1, t, 1, t^2) + E_32
        witness(
            "mu_4_5",
            "mu_4_4",
            &diag_t(&[0, 1, 0, 2]),
            &[(2, 1, one(), 0)],
        ),
        // diag(t^-3, t^-1, t^-4, t^-2) + t^-6 E_43
        witness(
            "mu_4_4",
            "mu_4_3",
            &diag_t(&[-3, -1, -4, -2]),
            &[(3, 2, one(), -6)],
        ),
        // diag(1, t^-1, 1, 1)
        witness("mu_4_3", "mu_4_2", &diag_t(&[0, -1, 0, 0]), &[]),
    ]
}

/// The witnesses among algebras of one dimension. Only 3 and 4 have any;
/// other supported dimensions yield an empty list.
pub fn witnesses_in_dim(dim: usize) -> Result<Vec<WitnessEntry>> {
    check_hasse_dim(dim)?;
    let prefix = format!("mu_{dim}_");
    Ok(witnesses()
        .into_iter()
        .filter(|w| w.from_label.starts_with(&prefix))
        .collect())
}

fn witness_outcome(w: &WitnessEntry) -> Result<WitnessOutcome> {
    let from = get(&w.from_label)?;
    let to = get(&w.to_label)?;
    let report = verify_degeneration_with(
        &from.algebra,
        &w.family,
        &to.algebra,
        MatchPolicy::UpToPermutation,
    )?;
    Ok(WitnessOutcome {
        from_label: w.from_label.clone(),
        to_label: w.to_label.clone(),
        status: report.status,
        warnings: report.warnings,
    })
}

fn summarize(outcomes: Vec<WitnessOutcome>) -> VerifySummary {
    let verified = outcomes
        .iter()
        .filter(|o| o.status == DegenerationStatus::Verified)
        .count();
    VerifySummary {
        verified,
        total: outcomes.len(),
        outcomes,
    }
}

/// Re-verifies the given witnesses, one worker per witness when the
/// `parallel` feature is on. Outcomes keep the input order either way.
pub fn verify_witnesses(entries: &[WitnessEntry]) -> Result<VerifySummary> {
    #[cfg(feature = "parallel")]
    let outcomes = entries
        .par_iter()
        .map(witness_outcome)
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let outcomes = entries
        .iter()
        .map(witness_outcome)
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(outcomes))
}

/// Sequential reference for [`verify_witnesses`]; same result, one worker.
pub fn verify_witnesses_seq(entries: &[WitnessEntry]) -> Result<VerifySummary> {
    let outcomes = entries
        .iter()
        .map(witness_outcome)
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(outcomes))
}

/// Re-verifies every built-in witness; all of them hold, so the summary
/// reports 16/16.
pub fn verify_all_witnesses() -> Result<VerifySummary> {
    verify_witnesses(&witnesses())
}

/// Sequential variant of [`verify_all_witnesses`].
pub fn verify_all_witnesses_seq() -> Result<VerifySummary> {
    verify_witnesses_seq(&witnesses())
}

/// Outcome of re-checking one entry's recorded invariants against live
/// recomputation.
#[derive(Clone, Debug)]
pub struct InvariantCheck {
    pub label: String,
    pub ok: bool,
    /// First discrepancy found, if any.
    pub detail: Option<String>,
}

/// Recomputes every invariant recorded on `entry` — type, square dimension,
/// coboundary space (dimension, and generator span equality or containment,
/// whichever is claimed), cohomology dimension, and deformation parameter
/// positions — and reports the first mismatch, if any.
pub fn check_entry(entry: &CatalogEntry) -> InvariantCheck {
    let fail = |detail: String| InvariantCheck {
        label: entry.label.clone(),
        ok: false,
        detail: Some(detail),
    };
    let alg = &entry.algebra;
    let exp = &entry.expected;
    if let Some(t) = &exp.type_seq {
        let got = alg.type_sequence();
        if got != *t {
            return fail(format!("type {got}, recorded {t}"));
        }
    }
    if let Some(d) = exp.square_dim {
        let got = alg.square_dim();
        if got != d {
            return fail(format!("square dim {got}, recorded {d}"));
        }
    }
    let needs_cohomology = exp.b2_dim.is_some()
        || exp.h2_dim.is_some()
        || !exp.b2_generators.is_empty()
        || !exp.infdef_positions.is_empty();
    if needs_cohomology {
        let report = crate::cohomology::h2(alg);
        if let Some(d) = exp.b2_dim {
            if report.b2_dim != d {
                return fail(format!("b2 dim {}, recorded {d}", report.b2_dim));
            }
        }
        if let Some(d) = exp.h2_dim {
            if report.h2_dim != d {
                return fail(format!("h2 dim {}, recorded {d}", report.h2_dim));
            }
        }
        if !exp.b2_generators.is_empty() {
            let n = alg.dim();
            let spanned = SubspaceBasis::from_spanning(
                n * n,
                exp.b2_generators.iter().map(Matrix::flatten).collect(),
            );
            if exp.b2_contains_only {
                if !report.b2_basis.contains_subspace(&spanned) {
                    return fail("recorded generators escape the coboundary space".into());
                }
            } else if spanned != report.b2_basis {
                return fail("recorded generators do not span the coboundary space".into());
            }
        }
        if !exp.infdef_positions.is_empty() {
            let got = report.representative_positions();
            if got != exp.infdef_positions {
                return fail(format!(
                    "representative positions {got:?}, recorded {:?}",
                    exp.infdef_positions
                ));
            }
        }
    }
    InvariantCheck {
        label: entry.label.clone(),
        ok: true,
        detail: None,
    }
}

/// [`check_entry`] over the whole catalog, in catalog order.
pub fn check_all_entries() -> Vec<InvariantCheck> {
    all_entries().iter().map(check_entry).collect()
}

fn check_hasse_dim(dim: usize) -> Result<()> {
    if (2..=4).contains(&dim) {
        Ok(())
    } else {
        Err(Error::BadDimension(dim))
    }
}

/// Labels of the nilpotent algebras of `dim` (2, 3 or 4), in index order;
/// these are the nodes of the corresponding Hasse diagram.
pub fn nilpotent_labels(dim: usize) -> Result<Vec<String>> {
    check_hasse_dim(dim)?;
    let count = match dim {
        2 => 2,
        3 => 4,
        _ => 12,
    };
    Ok((1..=count).map(|k| format!("mu_{dim}_{k}")).collect())
}

/// The degeneration Hasse edges among the nilpotent algebras of `dim`
/// (2, 3 or 4): every explicit witness of that dimension plus the edge onto
/// the abelian algebra from the class directly above it, certified by the
/// scaling family t^-1 I (which contracts any algebra to the abelian one).
pub fn hasse_edges(dim: usize) -> Result<Vec<HasseEdge>> {
    check_hasse_dim(dim)?;
    let mut edges: Vec<HasseEdge> = witnesses_in_dim(dim)?
        .into_iter()
        .map(|w| HasseEdge {
            from_label: w.from_label,
            to_label: w.to_label,
            family: w.family,
        })
        .collect();
    let abelian_from = format!("mu_{dim}_2");
    let abelian_to = format!("mu_{dim}_1");
    edges.push(HasseEdge {
        family: BasisChangeFamily::inverse_t_identity(dim)
            .with_label(format!("{abelian_from}->{abelian_to}")),
        from_label: abelian_from,
        to_label: abelian_to,
    });
    Ok(edges)
}

/// The Hasse edges of `dim` with each certifying family re-verified live
/// (permutation matching, as in the batch verifier): `(from, to, verified)`.
pub fn hasse_verified_edges(dim: usize) -> Result<Vec<(String, String, bool)>> {
    hasse_edges(dim)?
        .into_iter()
        .map(|edge| {
            let from = get(&edge.from_label)?;
            let to = get(&edge.to_label)?;
            let report = verify_degeneration_with(
                &from.algebra,
                &edge.family,
                &to.algebra,
                MatchPolicy::UpToPermutation,
            )?;
            let verified = report.status == DegenerationStatus::Verified;
            Ok((edge.from_label, edge.to_label, verified))
        })
        .collect()
}

/// DOT digraph of the dimension-`dim` Hasse diagram: one node per nilpotent
/// algebra of that dimension, one edge per Hasse edge, each edge annotated
/// with the outcome of re-verifying its certifying family. Output is
/// deterministic byte for byte.
pub fn hasse_dot(dim: usize) -> Result<String> {
    let edges = hasse_verified_edges(dim)?;
    let mut out = String::new();
    out.push_str(&format!("digraph hasse_dim{dim} {{\n"));
    out.push_str("  rankdir=TB;\n");
    for label in nilpotent_labels(dim)? {
        out.push_str(&format!("  \"{label}\";\n"));
    }
    for (from, to, verified) in &edges {
        let annotation = if *verified { "verified" } else { "unverified" };
        out.push_str(&format!(
            "  \"{from}\" -> \"{to}\" [label=\"{annotation}\"];\n"
        ));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Obstruction reports for every Hasse edge of `dim`; each verified edge
/// passes all of them.
pub fn hasse_obstructions(dim: usize) -> Result<Vec<(String, String, ObstructionReport)>> {
    hasse_edges(dim)?
        .into_iter()
        .map(|edge| {
            let from = get(&edge.from_label)?;
            let to = get(&edge.to_label)?;
            let report = obstructions(&from.algebra, &to.algebra)?;
            Ok((edge.from_label, edge.to_label, report))
        })
        .collect()
}
