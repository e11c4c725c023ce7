//! Degenerations: the basis-family action, naturalness, t -> 0 limits,
//! verification against a target, the five necessary-condition obstructions,
//! and bounded witness search.
//!
//! A family g assigns to each t != 0 an invertible matrix with Laurent
//! polynomial entries; the acted product is (g.mu)(x, y) = g(mu(g^-1 x,
//! g^-1 y)). With q = g^-1 this gives, on basis pairs,
//!   (g.mu)(e_i, e_j) = g . (sum_p q_pi q_pj * row_p(M))        (vanishes
//!     identically for i != j exactly when the family is natural), and
//!   row i of the acted structure matrix = g . (sum_p q_pi^2 * row_p(M)),
//! equivalently M'^T = g M^T (g^-1)^(2) with ^(2) the entrywise square.
//! Both routes are implemented (`act` and `act_via_formula`) and kept as
//! mutual cross-checks.

use crate::cohomology::{b2_basis, h2};
use crate::error::{Error, Result};
use crate::evolution::{EvolutionAlgebra, TypeSeq};
use crate::linalg::Matrix;
use crate::scalars::{roots_in_unit_interval, CycScalar, LaurentPoly, RationalFn};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A one-parameter family of basis changes with Laurent polynomial entries,
/// invertible as a rational-function matrix (hence for all but finitely
/// many t != 0).
#[derive(Clone, PartialEq, Debug)]
pub struct BasisChangeFamily {
    mat: Matrix<LaurentPoly>,
    label: Option<String>,
}

impl BasisChangeFamily {
    pub fn new(mat: Matrix<LaurentPoly>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "basis family must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let det = to_ratfn(&mat).det()?;
        if det.is_zero() {
            return Err(Error::SingularFamily);
        }
        Ok(BasisChangeFamily { mat, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// diag(t^-1, ..., t^-1): the family degenerating anything to abelian.
    pub fn inverse_t_identity(n: usize) -> Self {
        let tinv = LaurentPoly::monomial(CycScalar::one(), -1);
        BasisChangeFamily {
            mat: Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    tinv.clone()
                } else {
                    LaurentPoly::zero()
                }
            }),
            label: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix<LaurentPoly> {
        &self.mat
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn to_ratfn(&self) -> Matrix<RationalFn> {
        to_ratfn(&self.mat)
    }

    pub fn inverse(&self) -> Result<Matrix<RationalFn>> {
        self.to_ratfn().inverse().map_err(|e| match e {
            Error::SingularMatrix => Error::SingularFamily,
            other => other,
        })
    }

    /// Warnings about isolated parameters in (0, 1] where the family fails
    /// to be invertible: real roots of det(g) there, as isolating intervals.
    pub fn unit_interval_singularities(&self) -> Vec<String> {
        let det = match to_ratfn(&self.mat).det() {
            Ok(d) => d,
            Err(_) => return Vec::new(),
        };
        roots_in_unit_interval(det.num())
            .into_iter()
            .map(|(lo, hi)| {
                format!(
                    "det(g) has a real root in ({lo}, {hi}]: the family is singular at an isolated t in (0,1]"
                )
            })
            .collect()
    }
}

fn to_ratfn(m: &Matrix<LaurentPoly>) -> Matrix<RationalFn> {
    m.map(|p| RationalFn::from_laurent(p.clone()))
}

fn structure_ratfn(alg: &EvolutionAlgebra) -> Matrix<RationalFn> {
    alg.structure().map(|c| RationalFn::from_scalar(c.clone()))
}

fn check_dims(alg: &EvolutionAlgebra, g: &BasisChangeFamily) -> Result<()> {
    if alg.dim() != g.dim() {
        return Err(Error::DimMismatch(alg.dim(), g.dim()));
    }
    Ok(())
}

/// Acted structure matrix, computed directly from the bilinear definition:
/// row i = g . (sum_p q_pi^2 * row_p).
pub fn act(alg: &EvolutionAlgebra, g: &BasisChangeFamily) -> Result<Matrix<RationalFn>> {
    check_dims(alg, g)?;
    let n = alg.dim();
    let gm = g.to_ratfn();
    let q = g.inverse()?;
    let m = structure_ratfn(alg);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut w = vec![RationalFn::zero(); n];
        for p in 0..n {
            let c = q.get(p, i).mul_ref(q.get(p, i));
            if c.is_zero() {
                continue;
            }
            for (k, wk) in w.iter_mut().enumerate() {
                *wk = wk.add_ref(&c.mul_ref(m.get(p, k)));
            }
        }
        rows.push(gm.matvec(&w)?);
    }
    Ok(Matrix::from_rows(rows))
}

/// Acted structure matrix via the identity M'^T = g M^T (g^-1)^(2);
/// independent arithmetic route used as a cross-check of `act`.
pub fn act_via_formula(
    alg: &EvolutionAlgebra,
    g: &BasisChangeFamily,
) -> Result<Matrix<RationalFn>> {
    check_dims(alg, g)?;
    let gm = g.to_ratfn();
    let q = g.inverse()?;
    let m = structure_ratfn(alg);
    let acted_t = gm.matmul(&m.transpose())?.matmul(&q.hadamard_square())?;
    Ok(acted_t.transpose())
}

/// True iff all off-diagonal acted products vanish identically, i.e.
/// sum_p q_pi q_pj * row_p(M) = 0 as rational functions for every i < j.
pub fn is_natural_family(alg: &EvolutionAlgebra, g: &BasisChangeFamily) -> Result<bool> {
    Ok(offdiag_violations(alg, g)?.is_empty())
}

fn offdiag_violations(
    alg: &EvolutionAlgebra,
    g: &BasisChangeFamily,
) -> Result<Vec<OffendingEntry>> {
    check_dims(alg, g)?;
    let n = alg.dim();
    let q = g.inverse()?;
    let m = structure_ratfn(alg);
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let nonzero = (0..n).any(|k| {
                let mut acc = RationalFn::zero();
                for p in 0..n {
                    acc = acc.add_ref(&q.get(p, i).mul_ref(q.get(p, j)).mul_ref(m.get(p, k)));
                }
                !acc.is_zero()
            });
            if nonzero {
                bad.push(OffendingEntry {
                    row: i,
                    col: j,
                    detail: format!(
                        "acted product of basis vectors {} and {} is not identically zero",
                        i + 1,
                        j + 1
                    ),
                });
            }
        }
    }
    Ok(bad)
}

/// Entrywise t -> 0 limit of an acted structure matrix. Fails with the list
/// of entries of negative valuation.
pub fn limit(acted: &Matrix<RationalFn>) -> Result<EvolutionAlgebra> {
    let mut entries = Vec::with_capacity(acted.rows() * acted.cols());
    let mut offending = Vec::new();
    for i in 0..acted.rows() {
        for j in 0..acted.cols() {
            let rf = acted.get(i, j);
            match rf.limit0() {
                Ok(c) => entries.push(c),
                Err(_) => {
                    offending.push((i, j, rf.valuation().expect("divergent entries are nonzero")));
                    entries.push(CycScalar::zero());
                }
            }
        }
    }
    if !offending.is_empty() {
        return Err(Error::NoLimit { entries: offending });
    }
    EvolutionAlgebra::new(Matrix::from_flat(acted.rows(), acted.cols(), entries))
}

/// Outcome of a degeneration check, in pipeline order: naturalness, then
/// existence of the limit, then equality with the requested target.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegenerationStatus {
    Verified,
    NotNatural,
    NoLimit,
    LimitMismatch,
}

impl std::fmt::Display for DegenerationStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DegenerationStatus::Verified => "verified",
            DegenerationStatus::NotNatural => "not-natural",
            DegenerationStatus::NoLimit => "no-limit",
            DegenerationStatus::LimitMismatch => "limit-mismatch",
        };
        f.write_str(s)
    }
}

/// A problem location (0-based indices) with a human-readable diagnostic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OffendingEntry {
    pub row: usize,
    pub col: usize,
    pub detail: String,
}

/// How the limit is compared against the requested target.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatchPolicy {
    /// Structure matrices must coincide entry for entry.
    Exact,
    /// Additionally accept any basis permutation composed with a diagonal
    /// rescaling by eighth roots of unity (n <= 4 only).
    UpToPermutation,
}

#[derive(Clone, Debug)]
pub struct DegenerationReport {
    pub status: DegenerationStatus,
    pub acted_structure: Matrix<RationalFn>,
    pub limit_algebra: Option<EvolutionAlgebra>,
    pub offending_entries: Vec<OffendingEntry>,
    pub warnings: Vec<String>,
}

/// Full pipeline with exact target matching and singularity warnings.
pub fn verify_degeneration(
    alg: &EvolutionAlgebra,
    g: &BasisChangeFamily,
    target: &EvolutionAlgebra,
) -> Result<DegenerationReport> {
    verify_degeneration_with(alg, g, target, MatchPolicy::Exact)
}

pub fn verify_degeneration_with(
    alg: &EvolutionAlgebra,
    g: &BasisChangeFamily,
    target: &EvolutionAlgebra,
    policy: MatchPolicy,
) -> Result<DegenerationReport> {
    let mut report = verify_core(alg, g, target, policy)?;
    report.warnings.extend(g.unit_interval_singularities());
    Ok(report)
}

/// Pipeline body without the (comparatively costly) warning computation;
/// the search loop calls this directly.
fn verify_core(
    alg: &EvolutionAlgebra,
    g: &BasisChangeFamily,
    target: &EvolutionAlgebra,
    policy: MatchPolicy,
) -> Result<DegenerationReport> {
    if alg.dim() != target.dim() {
        return Err(Error::DimMismatch(alg.dim(), target.dim()));
    }
    check_dims(alg, g)?;
    let acted = act(alg, g)?;
    let mut warnings = Vec::new();

    let violations = offdiag_violations(alg, g)?;
    if !violations.is_empty() {
        return Ok(DegenerationReport {
            status: DegenerationStatus::NotNatural,
            acted_structure: acted,
            limit_algebra: None,
            offending_entries: violations,
            warnings,
        });
    }

    let lim = match limit(&acted) {
        Ok(l) => l,
        Err(Error::NoLimit { entries }) => {
            let offending = entries
                .into_iter()
                .map(|(i, j, v)| OffendingEntry {
                    row: i,
                    col: j,
                    detail: format!("entry has valuation {v}, so it diverges as t -> 0"),
                })
                .collect();
            return Ok(DegenerationReport {
                status: DegenerationStatus::NoLimit,
                acted_structure: acted,
                limit_algebra: None,
                offending_entries: offending,
                warnings,
            });
        }
        Err(other) => return Err(other),
    };

    let matched = if lim.structure() == target.structure() {
        true
    } else if policy == MatchPolicy::UpToPermutation && matches_up_to_permutation(&lim, target)? {
        warnings.push(
            "limit matches the target only up to a basis permutation and unit rescaling"
                .to_string(),
        );
        true
    } else {
        false
    };

    if matched {
        return Ok(DegenerationReport {
            status: DegenerationStatus::Verified,
            acted_structure: acted,
            limit_algebra: Some(lim),
            offending_entries: Vec::new(),
            warnings,
        });
    }

    let n = alg.dim();
    let offending = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| lim.structure().get(i, j) != target.structure().get(i, j))
        .map(|(i, j)| OffendingEntry {
            row: i,
            col: j,
            detail: format!(
                "limit entry is {}, target has {}",
                lim.structure().get(i, j),
                target.structure().get(i, j)
            ),
        })
        .collect();
    Ok(DegenerationReport {
        status: DegenerationStatus::LimitMismatch,
        acted_structure: acted,
        limit_algebra: Some(lim),
        offending_entries: offending,
        warnings,
    })
}

/// True iff b arises from a by relabelling the natural basis and rescaling
/// each vector by an eighth root of unity: b_ij = c_i^2 c_j^-1 a_p(i)p(j).
pub fn matches_up_to_permutation(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    let n = a.dim();
    if n > 4 {
        return Err(Error::BadDimension(n));
    }
    let units = CycScalar::roots_of_unity();
    let unit_inverses: Vec<CycScalar> = units
        .iter()
        .map(|u| u.inv_ref().expect("roots of unity are invertible"))
        .collect();
    for perm in permutations(n) {
        let mut unit_idx = vec![0usize; n];
        loop {
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let scaled = units[unit_idx[i]]
                        .mul_ref(&units[unit_idx[i]])
                        .mul_ref(&unit_inverses[unit_idx[j]])
                        .mul_ref(a.omega(perm[i], perm[j]));
                    scaled == *b.omega(i, j)
                })
            });
            if ok {
                return Ok(true);
            }
            // Advance the odometer over unit tuples.
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                unit_idx[pos] += 1;
                if unit_idx[pos] < units.len() {
                    break;
                }
                unit_idx[pos] = 0;
            }
            if unit_idx.iter().all(|&k| k == 0) {
                break;
            }
        }
    }
    Ok(false)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// The five necessary conditions for "mu degenerates to lam", evaluated on
/// the pair: ann and B^2 dims may only grow, square and H^2 dims may only
/// shrink toward mu, and the type may only decrease lexicographically.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub ann_dims: (usize, usize),
    pub type_lex: (TypeSeq, TypeSeq),
    pub type_le: bool,
    pub square_dims: (usize, usize),
    pub b2_dims: (usize, usize),
    pub h2_dims: (usize, usize),
    pub all_pass: bool,
}

impl ObstructionReport {
    pub fn ann_pass(&self) -> bool {
        self.ann_dims.0 <= self.ann_dims.1
    }
    pub fn type_pass(&self) -> bool {
        self.type_le
    }
    pub fn square_pass(&self) -> bool {
        self.square_dims.1 <= self.square_dims.0
    }
    pub fn b2_pass(&self) -> bool {
        self.b2_dims.0 >= self.b2_dims.1
    }
    pub fn h2_pass(&self) -> bool {
        self.h2_dims.0 <= self.h2_dims.1
    }
}

pub fn obstructions(mu: &EvolutionAlgebra, lam: &EvolutionAlgebra) -> Result<ObstructionReport> {
    if mu.dim() != lam.dim() {
        return Err(Error::DimMismatch(mu.dim(), lam.dim()));
    }
    let ann_dims = (mu.annihilator().dim(), lam.annihilator().dim());
    let type_lex = (mu.type_sequence(), lam.type_sequence());
    let type_le = type_lex.0.lex_le(&type_lex.1);
    let square_dims = (mu.square_dim(), lam.square_dim());
    let b2_dims = (b2_basis(mu).dim(), b2_basis(lam).dim());
    let h2_dims = (h2(mu).h2_dim, h2(lam).h2_dim);
    let mut report = ObstructionReport {
        ann_dims,
        type_lex,
        type_le,
        square_dims,
        b2_dims,
        h2_dims,
        all_pass: false,
    };
    report.all_pass = report.ann_pass()
        && report.type_pass()
        && report.square_pass()
        && report.b2_pass()
        && report.h2_pass();
    Ok(report)
}

/// Bounds for the witness search: candidate families are a diagonal of
/// monomials plus up to `max_offdiag_nonzeros` monomial off-diagonal
/// entries, with exponents in [-max_abs_exponent, max_abs_exponent] and
/// coefficients drawn from `coefficient_set` in the given order.
#[derive(Clone, Debug)]
pub struct SearchBounds {
    pub max_abs_exponent: i64,
    pub coefficient_set: Vec<CycScalar>,
    pub max_offdiag_nonzeros: usize,
}

/// One fully specified candidate within a diagonal-exponent batch.
struct Candidate {
    diag_coeffs: Vec<usize>,
    support: Vec<(usize, usize)>,
    off_exps: Vec<i64>,
    off_coeffs: Vec<usize>,
}

/// Searches for a verifying family under a fixed deterministic enumeration:
/// diagonal exponent vectors in graded-lexicographic order; within each,
/// off-diagonal support patterns by size then index order, their exponent
/// tuples graded-lexicographically, then diagonal and off-diagonal
/// coefficient tuples in set order. Returns the first verifying candidate;
/// `None` is not a proof of non-degeneration. Unless `skip_obstructions`
/// is set, a failing obstruction report short-circuits to `None`.
pub fn search_witness(
    mu: &EvolutionAlgebra,
    lam: &EvolutionAlgebra,
    bounds: &SearchBounds,
    skip_obstructions: bool,
) -> Result<Option<BasisChangeFamily>> {
    search_impl(mu, lam, bounds, skip_obstructions, true)
}

/// Sequential reference implementation of the same enumeration; the
/// parallel path must return exactly this result.
pub fn search_witness_seq(
    mu: &EvolutionAlgebra,
    lam: &EvolutionAlgebra,
    bounds: &SearchBounds,
    skip_obstructions: bool,
) -> Result<Option<BasisChangeFamily>> {
    search_impl(mu, lam, bounds, skip_obstructions, false)
}

fn search_impl(
    mu: &EvolutionAlgebra,
    lam: &EvolutionAlgebra,
    bounds: &SearchBounds,
    skip_obstructions: bool,
    parallel: bool,
) -> Result<Option<BasisChangeFamily>> {
    if mu.dim() != lam.dim() {
        return Err(Error::DimMismatch(mu.dim(), lam.dim()));
    }
    if bounds.coefficient_set.is_empty() || bounds.coefficient_set.iter().any(CycScalar::is_zero) {
        return Err(Error::ShapeMismatch(
            "coefficient set must be nonempty and free of zeros".into(),
        ));
    }
    if !skip_obstructions && !obstructions(mu, lam)?.all_pass {
        return Ok(None);
    }
    let n = mu.dim();
    let offdiag_positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let supports = support_patterns(&offdiag_positions, bounds.max_offdiag_nonzeros);
    let ncoeffs = bounds.coefficient_set.len();

    for diag_exps in exponent_vectors(n, bounds.max_abs_exponent) {
        // Materialize this batch of candidates in enumeration order.
        let mut batch = Vec::new();
        for support in &supports {
            for off_exps in exponent_vectors(support.len(), bounds.max_abs_exponent) {
                for diag_coeffs in index_tuples(n, ncoeffs) {
                    for off_coeffs in index_tuples(support.len(), ncoeffs) {
                        batch.push(Candidate {
                            diag_coeffs: diag_coeffs.clone(),
                            support: support.clone(),
                            off_exps: off_exps.clone(),
                            off_coeffs,
                        });
                    }
                }
            }
        }
        let try_candidate = |c: &Candidate| -> Option<BasisChangeFamily> {
            let mut m: Matrix<LaurentPoly> = Matrix::from_fn(n, n, |_, _| LaurentPoly::zero());
            for (i, &exp) in diag_exps.iter().enumerate() {
                m.set(
                    i,
                    i,
                    LaurentPoly::monomial(bounds.coefficient_set[c.diag_coeffs[i]].clone(), exp),
                );
            }
            for (s, &(i, j)) in c.support.iter().enumerate() {
                m.set(
                    i,
                    j,
                    LaurentPoly::monomial(
                        bounds.coefficient_set[c.off_coeffs[s]].clone(),
                        c.off_exps[s],
                    ),
                );
            }
            let family = BasisChangeFamily::new(m).ok()?; // skip singular candidates
            let report = verify_core(mu, &family, lam, MatchPolicy::Exact).ok()?;
            (report.status == DegenerationStatus::Verified).then_some(family)
        };

        let found = if parallel {
            #[cfg(feature = "parallel")]
            {
                batch.par_iter().find_map_first(try_candidate)
            }
            #[cfg(not(feature = "parallel"))]
            {
                batch.iter().find_map(try_candidate)
            }
        } else {
            batch.iter().find_map(try_candidate)
        };
        if let Some(family) = found {
            return Ok(Some(family));
        }
    }
    Ok(None)
}

/// All length-`len` vectors with entries in [-max_abs, max_abs], sorted by
/// total absolute degree and then lexicographically.
fn exponent_vectors(len: usize, max_abs: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * (2 * max_abs as usize + 1));
        for v in &out {
            for e in -max_abs..=max_abs {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| {
        let ga: i64 = a.iter().map(|e| e.abs()).sum();
        let gb: i64 = b.iter().map(|e| e.abs()).sum();
        ga.cmp(&gb).then_with(|| a.cmp(b))
    });
    out
}

/// Subsets of `positions` of size 0..=max_size, ordered by size and then by
/// index order within each size.
fn support_patterns(positions: &[(usize, usize)], max_size: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max_size.min(positions.len()) {
        combinations(positions, size, &mut out);
    }
    out
}

fn combinations(positions: &[(usize, usize)], size: usize, out: &mut Vec<Vec<(usize, usize)>>) {
    fn rec(
        positions: &[(usize, usize)],
        size: usize,
        start: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..positions.len() {
            cur.push(positions[k]);
            rec(positions, size, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(size);
    rec(positions, size, 0, &mut cur, out);
}

/// All index tuples of the given length over 0..base, lexicographic
/// (leftmost position varies slowest).
fn index_tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * base);
        for v in &out {
            for k in 0..base {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
