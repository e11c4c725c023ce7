//! End-to-end acceptance suite: one test per headline guarantee, each
//! printing a single pass line and enforcing its stated runtime budget.
//!
//! The first seven reproduce the recorded tables and worked examples from
//! the built-in catalog; the eighth cross-checks the core kernels against
//! independent oracles on randomized inputs; the ninth exercises the
//! parallel witness search end to end.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use evokit::catalog;
use evokit::cohomology;
use evokit::deformation;
use evokit::degeneration::{
    self, BasisChangeFamily, DegenerationStatus, MatchPolicy, SearchBounds,
};
use evokit::evolution::{EvolutionAlgebra, TypeSeq};
use evokit::{CycScalar, LaurentPoly, Matrix, SubspaceBasis};

fn budget(start: Instant, limit: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, budget {limit:?}"
    );
}

fn pass(line: &str) {
    println!("PASS {line}");
}

#[test]
fn criterion_1_nilpotent_classification_invariants() {
    let start = Instant::now();
    let entries = catalog::nilpotent_entries();
    assert_eq!(entries.len(), 19);
    for entry in &entries {
        let expected_type = entry.expected.type_seq.as_ref().expect("recorded type");
        let expected_square = entry.expected.square_dim.expect("recorded square dim");
        assert_eq!(
            &entry.algebra.type_sequence(),
            expected_type,
            "type of {}",
            entry.label
        );
        assert_eq!(
            entry.algebra.square_dim(),
            expected_square,
            "square dim of {}",
            entry.label
        );
        assert!(entry.algebra.is_nilpotent(), "{} nilpotent", entry.label);
    }
    // Spot-check one row end to end rather than through the catalog data.
    let mu_4_10 = catalog::get("mu_4_10").unwrap().algebra;
    assert_eq!(mu_4_10.type_sequence(), TypeSeq::new(vec![1, 1, 2]));
    assert_eq!(mu_4_10.square_dim(), 2);
    budget(start, Duration::from_secs(1), "criterion 1");
    pass("criterion 1: 19/19 nilpotent classes match recorded type and square dimension");
}

#[test]
fn criterion_2_two_dimensional_coboundary_table() {
    let start = Instant::now();
    let entries = catalog::two_dimensional_entries();
    assert_eq!(entries.len(), 10);
    let mut exact_spans = 0;
    for entry in &entries {
        let report = cohomology::h2(&entry.algebra);
        let n = entry.algebra.dim();
        let flat: Vec<Vec<CycScalar>> = entry
            .expected
            .b2_generators
            .iter()
            .map(Matrix::flatten)
            .collect();
        assert!(!flat.is_empty(), "{} records generators", entry.label);
        if entry.expected.b2_contains_only {
            for v in &flat {
                assert!(
                    report.b2_basis.contains(v),
                    "{}: recorded generator escapes the coboundary space",
                    entry.label
                );
            }
        } else {
            assert_eq!(
                SubspaceBasis::from_spanning(n * n, flat),
                report.b2_basis,
                "{}: coboundary span",
                entry.label
            );
            exact_spans += 1;
        }
        assert_eq!(
            Some(report.b2_dim),
            entry.expected.b2_dim,
            "{}",
            entry.label
        );
        assert_eq!(
            Some(report.h2_dim),
            entry.expected.h2_dim,
            "{}",
            entry.label
        );
        assert_eq!(
            report.representative_positions(),
            entry.expected.infdef_positions,
            "{}: free-parameter positions",
            entry.label
        );
    }
    assert_eq!(
        exact_spans, 9,
        "all samples off the singular locus span exactly"
    );

    // The published position sets, pinned explicitly.
    let positions = |label: &str| {
        cohomology::h2(&catalog::get(label).unwrap().algebra).representative_positions()
    };
    assert_eq!(positions("E1"), vec![(2, 1), (2, 2)]);
    assert_eq!(positions("E2"), vec![(2, 2)]);
    assert_eq!(positions("E3"), vec![(2, 1), (2, 2)]);
    assert_eq!(positions("E4"), vec![(1, 1), (2, 1), (2, 2)]);
    assert_eq!(positions("E5(1,0)"), vec![(2, 1), (2, 2)]);
    assert_eq!(positions("E5(0,0)"), vec![(1, 2), (2, 1)]);
    assert_eq!(positions("E5(0,1)"), vec![(1, 2), (2, 2)]);
    assert_eq!(positions("E6(0)"), vec![(1, 1), (2, 2)]);
    assert_eq!(positions("E6(1)"), vec![(1, 1), (2, 2)]);
    budget(start, Duration::from_secs(1), "criterion 2");
    pass(
        "criterion 2: coboundary spans and deformation parameter positions match on all 10 samples",
    );
}

#[test]
fn criterion_3_degeneration_witness_tables() {
    let start = Instant::now();
    let summary = catalog::verify_all_witnesses().unwrap();
    assert_eq!(summary.total, 16);
    assert_eq!(summary.verified, 16, "{summary}");

    // Eleven witnesses land entrywise on the target; the other five reach a
    // basis-relabelling of it and are flagged as such.
    let relabelled: BTreeSet<(String, String)> = summary
        .outcomes
        .iter()
        .filter(|o| o.warnings.iter().any(|w| w.contains("basis permutation")))
        .map(|o| (o.from_label.clone(), o.to_label.clone()))
        .collect();
    let expected: BTreeSet<(String, String)> = [
        ("mu_3_3", "mu_3_2"),
        ("mu_3_4", "mu_3_2"),
        ("mu_4_6", "mu_4_3"),
        ("mu_4_4", "mu_4_3"),
        ("mu_4_3", "mu_4_2"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(relabelled, expected);

    // The witness with eighth-root coefficients lands exactly.
    let w = catalog::witnesses()
        .into_iter()
        .find(|w| w.from_label == "mu_4_12" && w.to_label == "mu_4_8")
        .unwrap();
    let from = catalog::get("mu_4_12").unwrap().algebra;
    let to = catalog::get("mu_4_8").unwrap().algebra;
    let report = degeneration::verify_degeneration(&from, &w.family, &to).unwrap();
    assert_eq!(report.status, DegenerationStatus::Verified);
    assert_eq!(
        report.limit_algebra.unwrap().structure(),
        to.structure(),
        "limit structure matrix is entrywise equal"
    );
    budget(start, Duration::from_secs(2), "criterion 3");
    pass("criterion 3: 16/16 recorded witnesses verify; the eighth-root witness lands entrywise");
}

#[test]
fn criterion_4_negative_controls() {
    let start = Instant::now();

    // Composing the two three-dimensional witnesses entry-wise gives
    // diag(1, t^2, t^2), whose action on mu_3_4 blows up in the second row.
    let mu_3_4 = catalog::get("mu_3_4").unwrap().algebra;
    let composite = BasisChangeFamily::new(Matrix::diagonal(vec![
        LaurentPoly::monomial(CycScalar::one(), 0),
        LaurentPoly::monomial(CycScalar::one(), 2),
        LaurentPoly::monomial(CycScalar::one(), 2),
    ]))
    .unwrap();
    let mu_3_1 = catalog::get("mu_3_1").unwrap().algebra;
    let report = degeneration::verify_degeneration(&mu_3_4, &composite, &mu_3_1).unwrap();
    assert_eq!(report.status, DegenerationStatus::NoLimit);
    assert_eq!(report.offending_entries.len(), 1);
    let entry = &report.offending_entries[0];
    assert_eq!(
        (entry.row, entry.col),
        (1, 2),
        "blow-up sits in the second row"
    );
    assert!(
        entry.detail.contains("-2"),
        "offending valuation is -2: {}",
        entry.detail
    );

    // Composing the two-dimensional chain gives [[t^-1, 0], [t^-2, t^-2]],
    // which is not a natural basis change of the regular diagonal algebra.
    let mu1 = catalog::get("ex1_mu1").unwrap().algebra;
    let t = |c: i64, k: i64| LaurentPoly::monomial(CycScalar::from_int(c), k);
    let h = BasisChangeFamily::new(Matrix::from_rows(vec![
        vec![t(1, -1), LaurentPoly::zero()],
        vec![t(1, -2), t(1, -2)],
    ]))
    .unwrap();
    assert!(!degeneration::is_natural_family(&mu1, &h).unwrap());
    budget(start, Duration::from_secs(1), "criterion 4");
    pass(
        "criterion 4: composite families fail as expected (no-limit at valuation -2; non-natural)",
    );
}

#[test]
fn criterion_5_obstruction_suite() {
    let start = Instant::now();
    for w in catalog::witnesses() {
        let mu = catalog::get(&w.from_label).unwrap().algebra;
        let lam = catalog::get(&w.to_label).unwrap().algebra;
        let report = degeneration::obstructions(&mu, &lam).unwrap();
        assert!(
            report.all_pass,
            "verified edge {} -> {} fails an obstruction",
            w.from_label, w.to_label
        );
    }

    let mu_4_5 = catalog::get("mu_4_5").unwrap().algebra;
    let mu_4_6 = catalog::get("mu_4_6").unwrap().algebra;
    let fwd = degeneration::obstructions(&mu_4_5, &mu_4_6).unwrap();
    assert!(!fwd.type_pass(), "type obstruction blocks mu_4_5 -> mu_4_6");
    assert!(!fwd.all_pass);
    let back = degeneration::obstructions(&mu_4_6, &mu_4_5).unwrap();
    assert!(
        !back.square_pass(),
        "square obstruction blocks mu_4_6 -> mu_4_5"
    );
    assert!(!back.all_pass);
    budget(start, Duration::from_secs(1), "criterion 5");
    pass("criterion 5: all verified edges pass the five obstructions; the blocked pair fails as recorded");
}

#[test]
fn criterion_6_every_catalog_algebra_is_nonrigid() {
    let start = Instant::now();
    let entries = catalog::all_entries();
    assert_eq!(entries.len(), 32);
    for entry in &entries {
        let cert = deformation::nontrivial_infinitesimal(&entry.algebra).unwrap();
        assert!(
            !deformation::is_trivial_infinitesimal(&cert.deformation),
            "{}: certificate is trivial",
            entry.label
        );
        // Independent check: the certified infinitesimal escapes the
        // coboundary space computed from scratch.
        let report = cohomology::h2(&entry.algebra);
        assert!(
            !report.b2_basis.contains(&cert.deformation.nu1().flatten()),
            "{}: certified cocycle is a coboundary",
            entry.label
        );
        assert!(
            report.h2_dim >= 1,
            "{}: cohomology must be nontrivial",
            entry.label
        );
    }
    budget(start, Duration::from_secs(1), "criterion 6");
    pass("criterion 6: nontrivial infinitesimal certified for all 32 entries; h2 dimension >= 1 on each");
}

#[test]
fn criterion_7_abelian_sink() {
    let start = Instant::now();
    for entry in catalog::all_entries() {
        let n = entry.algebra.dim();
        let abelian = EvolutionAlgebra::new(Matrix::zero(n, n)).unwrap();
        let family = BasisChangeFamily::inverse_t_identity(n);
        let report = degeneration::verify_degeneration(&entry.algebra, &family, &abelian).unwrap();
        assert_eq!(
            report.status,
            DegenerationStatus::Verified,
            "{} must contract onto the abelian algebra",
            entry.label
        );
    }
    budget(start, Duration::from_secs(1), "criterion 7");
    pass("criterion 7: t^-1 I contracts every catalog algebra onto the abelian one");
}

/// Random algebra of dimension 1..=4 with small rational entries, roughly
/// half of them zero.
fn random_algebra(rng: &mut ChaCha8Rng) -> EvolutionAlgebra {
    let n = 1 + (rng.next_u64() % 4) as usize;
    let structure = Matrix::from_fn(n, n, |_, _| {
        if rng.next_u64().is_multiple_of(2) {
            CycScalar::zero()
        } else {
            let num = (rng.next_u64() % 9) as i64 - 4;
            let den = 1 + (rng.next_u64() % 3) as i64;
            CycScalar::from_ratio(num, den)
        }
    });
    EvolutionAlgebra::new(structure).unwrap()
}

/// Random invertible family: diagonal monomials with unit coefficients plus
/// one optional strictly-lower monomial, so the determinant is a monomial.
fn random_family(rng: &mut ChaCha8Rng, n: usize) -> BasisChangeFamily {
    let units = CycScalar::roots_of_unity();
    let mut m: Matrix<LaurentPoly> = Matrix::zero(n, n);
    for i in 0..n {
        let c = units[(rng.next_u64() % units.len() as u64) as usize].clone();
        let e = (rng.next_u64() % 7) as i64 - 3;
        m.set(i, i, LaurentPoly::monomial(c, e));
    }
    if n > 1 && rng.next_u64().is_multiple_of(2) {
        let i = 1 + (rng.next_u64() % (n as u64 - 1)) as usize;
        let j = (rng.next_u64() % i as u64) as usize;
        let e = (rng.next_u64() % 7) as i64 - 3;
        m.set(i, j, LaurentPoly::monomial(CycScalar::one(), e));
    }
    BasisChangeFamily::new(m).unwrap()
}

fn random_rational_matrix(rng: &mut ChaCha8Rng) -> Matrix<BigRational> {
    let rows = 1 + (rng.next_u64() % 5) as usize;
    let cols = 1 + (rng.next_u64() % 5) as usize;
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.next_u64().is_multiple_of(2) {
            BigRational::from_integer(0.into())
        } else {
            let num = (rng.next_u64() % 11) as i64 - 5;
            let den = 1 + (rng.next_u64() % 4) as i64;
            BigRational::new(num.into(), den.into())
        }
    })
}

#[test]
fn criterion_8_randomized_cross_checks() {
    let trials = 100;

    // (a) The bilinear definition of the action agrees with the closed
    // matrix formula entrywise.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..trials {
        let alg = random_algebra(&mut rng);
        let g = random_family(&mut rng, alg.dim());
        let direct = degeneration::act(&alg, &g).unwrap();
        let formula = degeneration::act_via_formula(&alg, &g).unwrap();
        assert_eq!(direct, formula);
    }

    // (b) Rank-nullity on random rational matrices.
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    for _ in 0..trials {
        let m = random_rational_matrix(&mut rng);
        assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
    }

    // (c) Every coboundary basis vector admits an endomorphism preimage
    // whose coboundary reproduces it.
    let mut rng = ChaCha8Rng::seed_from_u64(888);
    for _ in 0..trials {
        let alg = random_algebra(&mut rng);
        let n = alg.dim();
        let report = cohomology::h2(&alg);
        for v in report.b2_basis.vectors() {
            let theta = Matrix::from_flat(n, n, v.clone());
            let phi = cohomology::b2_preimage(&alg, &theta)
                .unwrap()
                .expect("basis vector of the coboundary space must have a preimage");
            let recovered = cohomology::coboundary(&alg, &phi);
            assert!(recovered.is_cocycle());
            assert_eq!(recovered.diagonal_part(), theta);
        }
    }

    // (d) The cohomology dimension count.
    let mut rng = ChaCha8Rng::seed_from_u64(8888);
    for _ in 0..trials {
        let alg = random_algebra(&mut rng);
        let n = alg.dim();
        let report = cohomology::h2(&alg);
        assert_eq!(report.h2_dim, n * n - report.b2_dim);
        assert_eq!(report.h2_representatives.len(), report.h2_dim);
    }

    pass("criterion 8: 100-trial randomized cross-checks hold (action formula, rank-nullity, preimages, dimension count)");
}

#[test]
fn criterion_9_search_rediscovers_a_witness() {
    let start = Instant::now();
    let mu = catalog::get("mu_3_4").unwrap().algebra;
    let lam = catalog::get("mu_3_2").unwrap().algebra;
    let bounds = SearchBounds {
        max_abs_exponent: 2,
        coefficient_set: vec![CycScalar::one()],
        max_offdiag_nonzeros: 0,
    };

    let found = degeneration::search_witness(&mu, &lam, &bounds, false)
        .unwrap()
        .expect("a witness exists within the bounds");
    let report = degeneration::verify_degeneration(&mu, &found, &lam).unwrap();
    assert_eq!(report.status, DegenerationStatus::Verified);
    assert_eq!(
        report.limit_algebra.unwrap().structure(),
        lam.structure(),
        "search only accepts entrywise landings"
    );

    // Deterministic first-match semantics: the sequential reference and
    // 1- and 8-worker parallel runs all return the same family.
    let seq = degeneration::search_witness_seq(&mu, &lam, &bounds, false)
        .unwrap()
        .unwrap();
    assert_eq!(found.matrix(), seq.matrix());
    for workers in [1usize, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .unwrap();
        let pooled = pool
            .install(|| degeneration::search_witness(&mu, &lam, &bounds, false))
            .unwrap()
            .unwrap();
        assert_eq!(
            pooled.matrix(),
            seq.matrix(),
            "{workers}-worker search differs from the sequential reference"
        );
    }

    // The verification pipeline also accepts the hand-written family
    // diag(1, t, t^2) up to relabelling of the limit.
    let published = BasisChangeFamily::new(Matrix::diagonal(vec![
        LaurentPoly::monomial(CycScalar::one(), 0),
        LaurentPoly::monomial(CycScalar::one(), 1),
        LaurentPoly::monomial(CycScalar::one(), 2),
    ]))
    .unwrap();
    let status =
        degeneration::verify_degeneration_with(&mu, &published, &lam, MatchPolicy::UpToPermutation)
            .unwrap()
            .status;
    assert_eq!(status, DegenerationStatus::Verified);

    budget(start, Duration::from_secs(10), "criterion 9");
    pass("criterion 9: search rediscovers a verified witness for mu_3_4 -> mu_3_2, identically across worker counts");
}
