//! Randomized cross-checks of the laws the crate relies on.
//!
//! Every test here pits a library computation against an independently
//! coded oracle — longest-path recursion on the support digraph for
//! nilpotency, direct evaluation for limits and specializations, planted
//! roots for the real-root locator — or checks an algebraic law (field
//! axioms, valuation additivity, equivalence-relation structure) on inputs
//! drawn from seeded generators, so a regression on either side of the
//! comparison is caught without a hand-picked example.

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use evokit::catalog;
use evokit::cohomology::{self, CocycleMatrix};
use evokit::deformation::{
    equivalence_witness, infinitesimals_equivalent, is_trivial_infinitesimal,
    nontrivial_infinitesimal, FirstOrderDeformation,
};
use evokit::degeneration::{act, matches_up_to_permutation, BasisChangeFamily};
use evokit::evolution::{EvolutionAlgebra, TypeSeq};
use evokit::scalars::roots_in_unit_interval;
use evokit::{CycScalar, LaurentPoly, Matrix, RationalFn};

fn rational() -> impl Strategy<Value = BigRational> {
    (-24i64..=24, 1i64..=8).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar() -> impl Strategy<Value = CycScalar> {
    [rational(), rational(), rational(), rational()].prop_map(CycScalar::from_coords)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(scalar(), 0..4)).prop_map(|(v, c)| LaurentPoly::new(v, c))
}

fn type_seq() -> impl Strategy<Value = TypeSeq> {
    prop::collection::vec(1usize..=5, 0..4).prop_map(TypeSeq::new)
}

proptest! {
    /// Q(zeta_8) satisfies the commutative field axioms, and inversion is an
    /// involution on nonzero elements.
    #[test]
    fn cyclotomic_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(
            a.mul_ref(&b.add_ref(&c)),
            a.mul_ref(&b).add_ref(&a.mul_ref(&c))
        );
        prop_assert!(a.add_ref(&a.neg_ref()).is_zero());
        prop_assert_eq!(a.mul_ref(&CycScalar::one()), a.clone());
        if !a.is_zero() {
            let inv = a.inv_ref().unwrap();
            prop_assert_eq!(a.mul_ref(&inv), CycScalar::one());
            prop_assert_eq!(inv.inv_ref().unwrap(), a);
        }
    }

    /// Each Galois map is a ring homomorphism, conjugation is an involution,
    /// and the norm is multiplicative.
    #[test]
    fn cyclotomic_galois_maps_are_ring_maps(a in scalar(), b in scalar()) {
        for k in [1u8, 3, 5, 7] {
            prop_assert_eq!(a.add_ref(&b).galois(k), a.galois(k).add_ref(&b.galois(k)));
            prop_assert_eq!(a.mul_ref(&b).galois(k), a.galois(k).mul_ref(&b.galois(k)));
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul_ref(&b).norm(), a.norm() * b.norm());
    }

    /// Valuation and degree are additive under products; the Laurent ring
    /// over a field has no zero divisors.
    #[test]
    fn laurent_valuation_and_degree_are_additive(f in laurent(), g in laurent()) {
        let p = f.mul_ref(&g);
        if f.is_zero() || g.is_zero() {
            prop_assert!(p.is_zero());
        } else {
            prop_assert!(!p.is_zero());
            prop_assert_eq!(
                p.valuation().unwrap(),
                f.valuation().unwrap() + g.valuation().unwrap()
            );
            prop_assert_eq!(
                p.degree().unwrap(),
                f.degree().unwrap() + g.degree().unwrap()
            );
        }
    }

    /// Evaluation at a fixed nonzero point is a ring homomorphism.
    #[test]
    fn laurent_evaluation_is_a_ring_map(f in laurent(), g in laurent()) {
        let t0 = BigRational::new(BigInt::from(2), BigInt::from(3));
        prop_assert_eq!(
            f.add_ref(&g).eval(&t0).unwrap(),
            f.eval(&t0).unwrap().add_ref(&g.eval(&t0).unwrap())
        );
        prop_assert_eq!(
            f.mul_ref(&g).eval(&t0).unwrap(),
            f.eval(&t0).unwrap().mul_ref(&g.eval(&t0).unwrap())
        );
    }

    /// A rational function has a limit at t = 0 exactly when its valuation
    /// is nonnegative, and subtracting the limit leaves strictly positive
    /// valuation.
    #[test]
    fn ratfn_limit_exists_iff_valuation_nonnegative(f in laurent(), g in laurent()) {
        prop_assume!(!g.is_zero());
        let rf = RationalFn::new(f, g).unwrap();
        match rf.valuation() {
            None => prop_assert!(rf.limit0().unwrap().is_zero()),
            Some(v) => {
                let lim = rf.limit0();
                prop_assert_eq!(lim.is_ok(), v >= 0);
                if let Ok(c) = lim {
                    prop_assert_eq!(c.is_zero(), v > 0);
                    let tail = rf.sub_ref(&RationalFn::from_scalar(c));
                    prop_assert!(tail.valuation().is_none_or(|w| w > 0));
                }
            }
        }
    }

    /// Evaluating the reduced quotient agrees with the quotient of the
    /// evaluations wherever the denominator survives.
    #[test]
    fn ratfn_evaluation_agrees_with_components(f in laurent(), g in laurent()) {
        prop_assume!(!g.is_zero());
        let t0 = BigRational::new(BigInt::from(1), BigInt::from(2));
        let gv = g.eval(&t0).unwrap();
        prop_assume!(!gv.is_zero());
        let rf = RationalFn::new(f.clone(), g).unwrap();
        prop_assert_eq!(
            rf.eval(&t0).unwrap(),
            f.eval(&t0).unwrap().mul_ref(&gv.inv_ref().unwrap())
        );
    }

    /// Lexicographic order on types is a reflexive, antisymmetric,
    /// transitive total order.
    #[test]
    fn type_order_is_total(a in type_seq(), b in type_seq(), c in type_seq()) {
        prop_assert!(a.lex_le(&a));
        prop_assert!(a.lex_le(&b) || b.lex_le(&a));
        if a.lex_le(&b) && b.lex_le(&a) {
            prop_assert_eq!(&a.parts, &b.parts);
        }
        if a.lex_le(&b) && b.lex_le(&c) {
            prop_assert!(a.lex_le(&c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Row reduction is idempotent, rank plus kernel dimension is the column
    /// count, kernel vectors map to zero, and solving against a constructed
    /// right-hand side reproduces it.
    #[test]
    fn elimination_laws_over_the_rationals(
        (m, x) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            (
                prop::collection::vec(rational(), r * c)
                    .prop_map(move |f| Matrix::from_flat(r, c, f)),
                prop::collection::vec(rational(), c),
            )
        })
    ) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(&p1, &p2);

        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
        for v in kernel.vectors() {
            prop_assert!(m.matvec(v).unwrap().iter().all(Zero::is_zero));
        }

        let b = m.matvec(&x).unwrap();
        let sol = m.solve(&b).unwrap().expect("constructed system is consistent");
        prop_assert_eq!(m.matvec(&sol).unwrap(), b);
    }
}

fn rand_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as i64
}

fn rand_scalar(rng: &mut ChaCha8Rng) -> CycScalar {
    CycScalar::from_ratio(rand_int(rng, -4, 4), rand_int(rng, 1, 3))
}

/// Structure matrices with roughly five eighths of the entries zero, so both
/// nilpotent and non-nilpotent draws occur often.
fn random_algebra(rng: &mut ChaCha8Rng, dim: usize) -> EvolutionAlgebra {
    let structure = Matrix::from_fn(dim, dim, |_, _| {
        if rng.next_u64() % 8 < 5 {
            CycScalar::zero()
        } else {
            rand_scalar(rng)
        }
    });
    EvolutionAlgebra::new(structure).expect("square matrix")
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        p.swap(i, j);
    }
    p
}

/// Height of every vertex in the support digraph (length in edges of the
/// longest outgoing path, so squares-to-zero vertices have height 0), or
/// `None` if the digraph has a cycle.
fn support_heights(alg: &EvolutionAlgebra) -> Option<Vec<usize>> {
    fn visit(v: usize, adj: &[Vec<usize>], state: &mut [u8], memo: &mut [usize]) -> Option<usize> {
        match state[v] {
            1 => return None, // vertex is on the current path: cycle
            2 => return Some(memo[v]),
            _ => {}
        }
        state[v] = 1;
        let mut h = 0;
        for k in 0..adj[v].len() {
            let w = adj[v][k];
            h = h.max(visit(w, adj, state, memo)? + 1);
        }
        state[v] = 2;
        memo[v] = h;
        Some(h)
    }

    let n = alg.dim();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !alg.omega(i, j).is_zero()).collect())
        .collect();
    let mut state = vec![0u8; n];
    let mut memo = vec![0usize; n];
    (0..n)
        .map(|v| visit(v, &adj, &mut state, &mut memo))
        .collect()
}

/// The annihilating series is the height filtration of the support digraph:
/// the algebra is nilpotent iff the digraph is acyclic, the k-th part of the
/// type counts vertices of height k-1, and the k-th series term is spanned
/// by the vertices of height below k.
#[test]
fn nilpotency_matches_the_support_digraph_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    let (mut nilpotent, mut cyclic) = (0usize, 0usize);
    for trial in 0..400 {
        let n = 1 + (trial % 5);
        let alg = random_algebra(&mut rng, n);
        match support_heights(&alg) {
            None => {
                cyclic += 1;
                assert!(!alg.is_nilpotent());
                assert!(alg.type_sequence().parts.iter().sum::<usize>() < n);
            }
            Some(heights) => {
                nilpotent += 1;
                assert!(alg.is_nilpotent());
                let parts_len = heights.iter().max().map_or(0, |m| m + 1);
                let parts: Vec<usize> = (0..parts_len)
                    .map(|k| heights.iter().filter(|&&h| h == k).count())
                    .collect();
                assert_eq!(alg.type_sequence().parts, parts);
                let dims: Vec<usize> = (0..parts_len)
                    .map(|k| heights.iter().filter(|&&h| h <= k).count())
                    .collect();
                let series = alg.ann_series();
                assert_eq!(series.dims(), dims);
                assert_eq!(series.stabilized_at, parts_len);
            }
        }
    }
    assert!(
        nilpotent > 40 && cyclic > 40,
        "generator must exercise both branches"
    );
}

/// Relabelling the natural basis and rescaling by eighth roots of unity is
/// an isomorphism: every computed invariant is preserved and the
/// permutation matcher recognizes the copy in both directions.
#[test]
fn twisted_basis_copies_share_all_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(314159);
    let units = CycScalar::roots_of_unity();
    for trial in 0..45 {
        let n = 2 + (trial % 3);
        let a = random_algebra(&mut rng, n);
        let p = random_permutation(&mut rng, n);
        let c: Vec<CycScalar> = (0..n)
            .map(|_| units[(rng.next_u64() % 8) as usize].clone())
            .collect();
        let c_inv: Vec<CycScalar> = c.iter().map(|u| u.inv_ref().unwrap()).collect();
        let b = EvolutionAlgebra::new(Matrix::from_fn(n, n, |i, j| {
            c[i].mul_ref(&c[i])
                .mul_ref(&c_inv[j])
                .mul_ref(a.omega(p[i], p[j]))
        }))
        .unwrap();

        assert!(matches_up_to_permutation(&a, &b).unwrap());
        assert!(matches_up_to_permutation(&b, &a).unwrap());
        assert_eq!(a.type_sequence().parts, b.type_sequence().parts);
        assert_eq!(a.square_dim(), b.square_dim());
        assert_eq!(a.is_nilpotent(), b.is_nilpotent());
        let (ha, hb) = (cohomology::h2(&a), cohomology::h2(&b));
        assert_eq!(ha.b2_dim, hb.b2_dim);
        assert_eq!(ha.h2_dim, hb.h2_dim);
        assert_eq!(
            cohomology::derivation_space(&a).dim(),
            cohomology::derivation_space(&b).dim()
        );
    }
}

fn random_cocycle(rng: &mut ChaCha8Rng, n: usize) -> CocycleMatrix {
    Matrix::from_fn(n, n, |_, _| rand_scalar(rng))
}

/// A random element of B^2, drawn as a combination of the computed basis.
fn random_coboundary(rng: &mut ChaCha8Rng, alg: &EvolutionAlgebra) -> CocycleMatrix {
    let n = alg.dim();
    let mut flat = vec![CycScalar::zero(); n * n];
    for v in cohomology::b2_basis(alg).vectors() {
        let c = rand_scalar(rng);
        for (slot, coord) in flat.iter_mut().zip(v) {
            *slot = slot.add_ref(&c.mul_ref(coord));
        }
    }
    Matrix::from_flat(n, n, flat)
}

/// Equivalence of first-order deformations is an equivalence relation:
/// shifting an infinitesimal by any coboundary stays in its class with a
/// checkable morphism, while shifting by a nonrigidity certificate leaves
/// the class and admits no morphism.
#[test]
fn deformation_equivalence_is_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(161803);
    let labels = [
        "ex1_mu1", "ex1_mu2", "ex1_mu3", "mu_3_2", "mu_3_4", "mu_4_6",
    ];
    for trial in 0..36 {
        let base = catalog::get(labels[trial % labels.len()]).unwrap().algebra;
        let n = base.dim();
        let deform = |nu1: CocycleMatrix| FirstOrderDeformation::new(base.clone(), nu1).unwrap();

        let nu = random_cocycle(&mut rng, n);
        let theta = random_coboundary(&mut rng, &base);
        let theta2 = random_coboundary(&mut rng, &base);
        let d0 = deform(nu.clone());
        let d1 = deform(nu.add(&theta).unwrap());
        let d2 = deform(nu.add(&theta).unwrap().add(&theta2).unwrap());

        assert!(infinitesimals_equivalent(&d0, &d0).unwrap());
        assert!(infinitesimals_equivalent(&d0, &d1).unwrap());
        assert!(infinitesimals_equivalent(&d1, &d0).unwrap());
        assert!(infinitesimals_equivalent(&d1, &d2).unwrap());
        assert!(infinitesimals_equivalent(&d0, &d2).unwrap());
        assert!(is_trivial_infinitesimal(&deform(theta)));
        assert!(equivalence_witness(&d0, &d1).unwrap().is_some());

        let cert = nontrivial_infinitesimal(&base).unwrap();
        let shifted = deform(nu.add(cert.deformation.nu1()).unwrap());
        assert!(!infinitesimals_equivalent(&d0, &shifted).unwrap());
        assert!(equivalence_witness(&d0, &shifted).unwrap().is_none());
        assert!(!is_trivial_infinitesimal(&cert.deformation));
    }

    let a = catalog::get("ex1_mu1").unwrap().algebra;
    let b = catalog::get("ex1_mu2").unwrap().algebra;
    let da = FirstOrderDeformation::new(a.clone(), Matrix::zero(2, 2)).unwrap();
    let db = FirstOrderDeformation::new(b, Matrix::zero(2, 2)).unwrap();
    assert!(infinitesimals_equivalent(&da, &db).is_err());
}

fn eval_matrix(m: &Matrix<RationalFn>, t0: &BigRational) -> Option<Matrix<CycScalar>> {
    let mut flat = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            flat.push(m.get(i, j).eval(t0).ok()?);
        }
    }
    Some(Matrix::from_flat(m.rows(), m.cols(), flat))
}

fn specialize_family(g: &BasisChangeFamily, t0: &BigRational) -> Option<BasisChangeFamily> {
    let n = g.dim();
    let mut flat = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            flat.push(LaurentPoly::constant(g.matrix().get(i, j).eval(t0).ok()?));
        }
    }
    BasisChangeFamily::new(Matrix::from_flat(n, n, flat)).ok()
}

/// One triangular family with unit monomial diagonal; always invertible.
fn random_family(rng: &mut ChaCha8Rng, n: usize) -> BasisChangeFamily {
    let units = CycScalar::roots_of_unity();
    let unit = |rng: &mut ChaCha8Rng| units[(rng.next_u64() % 8) as usize].clone();
    let mut m = Matrix::from_fn(n, n, |_, _| LaurentPoly::zero());
    for d in 0..n {
        let c = unit(rng);
        m.set(d, d, LaurentPoly::monomial(c, rand_int(rng, -3, 3)));
    }
    if n >= 2 && rng.next_u64().is_multiple_of(2) {
        let i = rand_int(rng, 1, n as i64 - 1) as usize;
        let j = (rng.next_u64() % i as u64) as usize;
        let c = unit(rng);
        m.set(i, j, LaurentPoly::monomial(c, rand_int(rng, -3, 3)));
    }
    BasisChangeFamily::new(m).expect("unit monomial diagonal is invertible")
}

/// Acting by a family and then specializing t agrees with acting by the
/// specialized constant basis change, on every recorded witness and on
/// random triangular families.
#[test]
fn action_commutes_with_specialization() {
    let candidates: Vec<BigRational> = [(1, 2), (1, 3), (2, 5), (3, 7)]
        .iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect();

    let check = |alg: &EvolutionAlgebra, g: &BasisChangeFamily| {
        let acted = act(alg, g).unwrap();
        for t0 in &candidates {
            let Some(g0) = specialize_family(g, t0) else {
                continue;
            };
            let Some(lhs) = eval_matrix(&acted, t0) else {
                continue;
            };
            let acted0 = act(alg, &g0).unwrap();
            let one = BigRational::new(BigInt::from(1), BigInt::from(1));
            let rhs = eval_matrix(&acted0, &one).expect("constant entries evaluate everywhere");
            assert_eq!(lhs, rhs);
            return;
        }
        panic!("no admissible specialization point among the candidates");
    };

    for w in catalog::witnesses() {
        let from = catalog::get(&w.from_label).unwrap().algebra;
        check(&from, &w.family);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(141421);
    for trial in 0..40 {
        let n = 2 + (trial % 3);
        let alg = random_algebra(&mut rng, n);
        let g = random_family(&mut rng, n);
        check(&alg, &g);
    }
}

/// The real-root locator reports one isolating interval per planted root in
/// (0, 1], ignores roots planted outside, and is unaffected by monomial
/// factors and by a non-real factor with no real roots.
#[test]
fn root_isolation_matches_planted_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(577215);
    let inside: Vec<BigRational> = [(1, 3), (1, 2), (5, 8), (1, 1), (7, 64), (9, 10)]
        .iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect();
    let outside: Vec<BigRational> = [(-1, 2), (2, 1), (3, 1), (-2, 1)]
        .iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect();

    for _ in 0..60 {
        let mut planted: Vec<BigRational> = Vec::new();
        let mut p = LaurentPoly::one();
        for r in &inside {
            if rng.next_u64() % 2 == 0 {
                planted.push(r.clone());
                let root = CycScalar::from_rational(r.clone());
                p = p.mul_ref(&LaurentPoly::new(0, vec![root.neg_ref(), CycScalar::one()]));
            }
        }
        for r in &outside {
            if rng.next_u64() % 2 == 0 {
                let root = CycScalar::from_rational(r.clone());
                p = p.mul_ref(&LaurentPoly::new(0, vec![root.neg_ref(), CycScalar::one()]));
            }
        }
        if rng.next_u64() % 2 == 0 {
            // A factor with no real roots must not disturb the count.
            p = p.mul_ref(&LaurentPoly::new(
                0,
                vec![CycScalar::i().neg_ref(), CycScalar::one()],
            ));
        }
        p = p.mul_ref(&LaurentPoly::monomial(
            CycScalar::one(),
            rand_int(&mut rng, -2, 2),
        ));

        let intervals = roots_in_unit_interval(&p);
        assert_eq!(intervals.len(), planted.len());
        for (lo, hi) in &intervals {
            let hits = planted.iter().filter(|r| lo < r && *r <= hi).count();
            assert_eq!(hits, 1, "each interval isolates exactly one planted root");
        }
        for r in &planted {
            let hits = intervals
                .iter()
                .filter(|(lo, hi)| lo < r && r <= hi)
                .count();
            assert_eq!(hits, 1, "each planted root lands in exactly one interval");
        }
    }
}
