//! Laurent polynomials in one variable t over Q(zeta_8).

use num::{BigRational, One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::cyclotomic::CycScalar;
use crate::scalars::parse;
use crate::scalars::polys;

/// Finite sum of monomials c * t^k, k possibly negative.
///
/// Invariants:
/// 1. `coeffs[j]` is the coefficient of t^(val + j).
/// 2. First and last stored coefficients are nonzero.
/// 3. The zero polynomial is the empty list with val = 0.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    val: i64,
    coeffs: Vec<CycScalar>,
}

impl LaurentPoly {
    pub fn new(val: i64, coeffs: Vec<CycScalar>) -> Self {
        Self::normalized(val, coeffs)
    }

    fn normalized(mut val: i64, mut coeffs: Vec<CycScalar>) -> Self {
        while coeffs.last().is_some_and(CycScalar::is_zero) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            val += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            val = 0;
        }
        LaurentPoly { val, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            val: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(CycScalar::one())
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::normalized(0, vec![c])
    }

    /// c * t^k.
    pub fn monomial(c: CycScalar, k: i64) -> Self {
        Self::normalized(k, vec![c])
    }

    /// The variable t.
    pub fn t() -> Self {
        LaurentPoly::monomial(CycScalar::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient; None for the zero polynomial
    /// (conventionally +infinity).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, k: i64) -> CycScalar {
        if self.is_zero() || k < self.val {
            return CycScalar::zero();
        }
        let idx = (k - self.val) as usize;
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(CycScalar::zero)
    }

    /// Monomial terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycScalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.val + j as i64, c))
    }

    /// True when the polynomial is a single monomial.
    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    /// The coefficient vector with t^val factored out; its constant term is
    /// nonzero for a nonzero polynomial.
    pub fn poly_part(&self) -> Vec<CycScalar> {
        self.coeffs.clone()
    }

    pub fn from_poly_part(val: i64, part: Vec<CycScalar>) -> Self {
        Self::normalized(val, part)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let val = self.val.min(other.val);
        let hi = (self.val + self.coeffs.len() as i64).max(other.val + other.coeffs.len() as i64);
        let mut coeffs = Vec::with_capacity((hi - val) as usize);
        for k in val..hi {
            coeffs.push(self.coeff(k).add_ref(&other.coeff(k)));
        }
        Self::normalized(val, coeffs)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            val: self.val,
            coeffs: self.coeffs.iter().map(CycScalar::neg_ref).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let coeffs = polys::mul(&self.coeffs, &other.coeffs);
        Self::normalized(self.val + other.val, coeffs)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        Self::normalized(self.val, self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact evaluation at a nonzero rational point (needed whenever
    /// val < 0; also fine at 0 for ordinary polynomials).
    pub fn eval(&self, t: &BigRational) -> Result<CycScalar> {
        if t.is_zero() && self.val < 0 {
            return Err(Error::NoLimit {
                entries: vec![(0, 0, self.val)],
            });
        }
        let mut acc = CycScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&CycScalar::from_rational(t.clone())).add_ref(c);
        }
        if self.val == 0 || acc.is_zero() {
            return Ok(acc);
        }
        let tval = if self.val >= 0 {
            num::pow::pow(t.clone(), self.val as usize)
        } else {
            num::pow::pow(t.recip(), (-self.val) as usize)
        };
        Ok(acc.mul_ref(&CycScalar::from_rational(tval)))
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_laurent(text)
    }
}

impl crate::field::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_ref(rhs)
    }
}
impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.sub_ref(rhs)
    }
}
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}
impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

/// Canonical text form; round-trips through `parse_laurent`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let txt = parse::format_laurent_term(k, c);
            if first {
                write!(f, "{txt}")?;
                first = false;
            } else if let Some(stripped) = txt.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {txt}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_ref(&rhs)
    }
}
impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}
