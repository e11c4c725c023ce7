//! Exact detection of real roots in (0, 1] for polynomials over Q(zeta_8).
//!
//! A complex-coefficient polynomial P vanishes at a real point exactly when
//! its real and imaginary parts do. Both parts have coefficients in the real
//! subfield Q(sqrt 2), where signs are exactly decidable, so their gcd admits
//! an ordinary Sturm-chain root count and bisection-based isolation.

use num::{BigRational, One, Signed, Zero};

use crate::scalars::cyclotomic::CycScalar;
use crate::scalars::laurent::LaurentPoly;
use crate::scalars::polys;

/// Element a + b*sqrt(2) of the real subfield Q(sqrt 2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sqrt2Scalar {
    pub a: BigRational,
    pub b: BigRational,
}

impl Sqrt2Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Sqrt2Scalar { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Sqrt2Scalar::new(a, BigRational::zero())
    }

    /// Exact sign: compares a^2 against 2 b^2 when the parts disagree.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let a2 = &self.a * &self.a;
        let b2 = (&self.b * &self.b) * BigRational::from_integer(2.into());
        match a2.cmp(&b2) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl crate::field::Ring for Sqrt2Scalar {
    fn zero() -> Self {
        Sqrt2Scalar::from_rational(<BigRational as Zero>::zero())
    }
    fn one() -> Self {
        Sqrt2Scalar::from_rational(<BigRational as One>::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, other: &Self) -> Self {
        Sqrt2Scalar::new(&self.a + &other.a, &self.b + &other.b)
    }
    fn sub(&self, other: &Self) -> Self {
        Sqrt2Scalar::new(&self.a - &other.a, &self.b - &other.b)
    }
    fn mul(&self, other: &Self) -> Self {
        let two = BigRational::from_integer(2.into());
        Sqrt2Scalar::new(
            &self.a * &other.a + (&self.b * &other.b) * &two,
            &self.a * &other.b + &self.b * &other.a,
        )
    }
    fn neg(&self) -> Self {
        Sqrt2Scalar::new(-self.a.clone(), -self.b.clone())
    }
}

impl crate::field::Field for Sqrt2Scalar {
    fn inv(&self) -> crate::error::Result<Self> {
        if crate::field::Ring::is_zero(self) {
            return Err(crate::error::Error::DivisionByZero);
        }
        // 1/(a + b sqrt2) = (a - b sqrt2) / (a^2 - 2 b^2)
        let two = BigRational::from_integer(2.into());
        let n = &self.a * &self.a - (&self.b * &self.b) * &two;
        Ok(Sqrt2Scalar::new(&self.a / &n, -(&self.b / &n)))
    }
}

/// Isolating rational intervals (lo, hi], one per distinct real root of p in
/// (0, 1]. Vanishing valuation factors t^v are ignored (0 is outside the
/// interval). Intervals are disjoint, sorted, and of width <= 1/64.
pub fn roots_in_unit_interval(p: &LaurentPoly) -> Vec<(BigRational, BigRational)> {
    if p.is_zero() {
        return Vec::new();
    }
    let (re, im): (Vec<Sqrt2Scalar>, Vec<Sqrt2Scalar>) =
        p.poly_part().iter().map(split_real_imag).unzip();
    let re = polys::normalize(re);
    let im = polys::normalize(im);
    let g = polys::gcd_monic(&re, &im);
    let g = if polys::is_zero(&re) {
        polys::make_monic(im)
    } else if polys::is_zero(&im) {
        polys::make_monic(re)
    } else {
        g
    };
    if polys::degree(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    // Square-free part keeps the Sturm count equal to the number of distinct roots.
    let gp = polys::derivative(&g);
    let common = polys::gcd_monic(&g, &gp);
    let squarefree = if polys::degree(&common) > Some(0) {
        polys::divrem(&g, &common).0
    } else {
        g
    };
    let chain = sturm_chain(&squarefree);

    let zero = BigRational::zero();
    let one = BigRational::one();
    let total = count_in(&chain, &zero, &one);
    if total == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let width = BigRational::new(1.into(), 64.into());
    isolate(&chain, &zero, &one, total, &width, &mut out);
    out
}

fn split_real_imag(c: &CycScalar) -> (Sqrt2Scalar, Sqrt2Scalar) {
    let ((ra, rb), (ia, ib)) = c.real_imag_sqrt2();
    (Sqrt2Scalar::new(ra, rb), Sqrt2Scalar::new(ia, ib))
}

fn sturm_chain(p: &[Sqrt2Scalar]) -> Vec<Vec<Sqrt2Scalar>> {
    let mut chain = vec![p.to_vec(), polys::derivative(p)];
    loop {
        let n = chain.len();
        if polys::is_zero(&chain[n - 1]) {
            chain.pop();
            return chain;
        }
        let (_, r) = polys::divrem(&chain[n - 2], &chain[n - 1]);
        if polys::is_zero(&r) {
            return chain;
        }
        chain.push(polys::neg(&r));
    }
}

fn sign_changes_at(chain: &[Vec<Sqrt2Scalar>], x: &BigRational) -> usize {
    let xs = Sqrt2Scalar::from_rational(x.clone());
    let mut signs = chain
        .iter()
        .map(|p| polys::eval(p, &xs).sign())
        .filter(|s| *s != 0);
    let mut changes = 0;
    let mut prev = match signs.next() {
        Some(s) => s,
        None => return 0,
    };
    for s in signs {
        if s != prev {
            changes += 1;
            prev = s;
        }
    }
    changes
}

/// Number of distinct roots in (lo, hi] for a square-free Sturm chain.
fn count_in(chain: &[Vec<Sqrt2Scalar>], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes_at(chain, lo) - sign_changes_at(chain, hi)
}

fn isolate(
    chain: &[Vec<Sqrt2Scalar>],
    lo: &BigRational,
    hi: &BigRational,
    count: usize,
    width: &BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    if count == 0 {
        return;
    }
    if count == 1 && (hi - lo) <= *width {
        out.push((lo.clone(), hi.clone()));
        return;
    }
    let mid = (lo + hi) / BigRational::from_integer(2.into());
    let left = count_in(chain, lo, &mid);
    isolate(chain, lo, &mid, left, width, out);
    isolate(chain, &mid, hi, count - left, width, out);
}
