//! Reduced rational functions in t over Q(zeta_8).

use num::{BigRational, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use crate::scalars::cyclotomic::CycScalar;
use crate::scalars::laurent::LaurentPoly;
use crate::scalars::polys;

/// Ratio num/den of Laurent polynomials, kept fully reduced at construction.
///
/// Invariants:
/// 1. den is nonzero, has valuation 0, and its constant coefficient is 1.
/// 2. gcd(poly_part(num), poly_part(den)) = 1, so equality is structural and
///    valuation(self) = valuation(num).
/// 3. The zero function is 0/1.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    /// Build and eagerly reduce. `Error::DivisionByZero` when den = 0.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFn {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            });
        }
        // Valuations split off first: both poly parts have nonzero constant
        // term, so t never divides either and the gcd is an ordinary one.
        let shift = num.valuation().unwrap() - den.valuation().unwrap();
        let mut npart = num.poly_part();
        let mut dpart = den.poly_part();
        let g = polys::gcd_monic(&npart, &dpart);
        if polys::degree(&g) > Some(0) {
            npart = polys::divrem(&npart, &g).0;
            dpart = polys::divrem(&dpart, &g).0;
        }
        // Normalize the denominator's constant coefficient to 1.
        let scale = dpart[0].inv_ref()?;
        npart = npart.iter().map(|c| c.mul_ref(&scale)).collect();
        dpart = dpart.iter().map(|c| c.mul_ref(&scale)).collect();
        Ok(RationalFn {
            num: LaurentPoly::from_poly_part(shift, npart),
            den: LaurentPoly::from_poly_part(0, dpart),
        })
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_scalar(c: CycScalar) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1, i.e. the function is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den == LaurentPoly::one()
    }

    /// Valuation at t = 0; None encodes +infinity (the zero function).
    pub fn valuation(&self) -> Option<i64> {
        self.num.valuation()
    }

    /// Limit at t -> 0: 0 for positive valuation, the constant coefficient at
    /// valuation 0, and a no-limit error for negative valuation.
    pub fn limit0(&self) -> Result<CycScalar> {
        match self.valuation() {
            None => Ok(CycScalar::zero()),
            Some(v) if v > 0 => Ok(CycScalar::zero()),
            Some(0) => Ok(self.num.coeff(0)),
            Some(v) => Err(Error::NoLimit {
                entries: vec![(0, 0, v)],
            }),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul_ref(&other.den)
            .add_ref(&other.num.mul_ref(&self.den));
        let den = self.den.mul_ref(&other.den);
        RationalFn::new(num, den).expect("denominator product is nonzero")
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        RationalFn {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        RationalFn::new(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
            .expect("denominator product is nonzero")
    }

    pub fn inv_ref(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv_ref()?))
    }

    /// Exact evaluation at a rational point where the denominator is nonzero.
    pub fn eval(&self, t: &BigRational) -> Result<CycScalar> {
        let d = self.den.eval(t)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if t.is_zero() {
            return self.limit0();
        }
        Ok(self.num.eval(t)?.mul_ref(&d.inv_ref()?))
    }
}

impl crate::field::Ring for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn one() -> Self {
        RationalFn::one()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
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

impl crate::field::Field for RationalFn {
    fn inv(&self) -> Result<Self> {
        self.inv_ref()
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.add_ref(rhs)
    }
}
impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self.sub_ref(rhs)
    }
}
impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        self.mul_ref(rhs)
    }
}
impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        self.neg_ref()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tpow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(CycScalar::one(), k)
    }

    #[test]
    fn reduction_cancels_common_factor() {
        // (t^2 + t^3) / (1 + t) = t^2, valuation 2.
        let num = tpow(2).add_ref(&tpow(3));
        let den = tpow(0).add_ref(&tpow(1));
        let f = RationalFn::new(num, den).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.valuation(), Some(2));
        assert_eq!(f, RationalFn::from_laurent(tpow(2)));
    }

    #[test]
    fn valuation_of_simple_monomials() {
        let f = RationalFn::from_laurent(tpow(-2));
        assert_eq!(f.valuation(), Some(-2));
        assert_eq!(RationalFn::zero().valuation(), None);
    }

    #[test]
    fn limit_at_zero() {
        let t1 = RationalFn::from_laurent(tpow(1));
        assert_eq!(t1.limit0().unwrap(), CycScalar::zero());

        // (2 + t) / (1 + t) -> 2
        let num = LaurentPoly::constant(CycScalar::from_int(2)).add_ref(&tpow(1));
        let den = tpow(0).add_ref(&tpow(1));
        let f = RationalFn::new(num, den).unwrap();
        assert_eq!(f.limit0().unwrap(), CycScalar::from_int(2));

        let pole = RationalFn::from_laurent(tpow(-1));
        assert!(matches!(pole.limit0(), Err(Error::NoLimit { .. })));
    }

    #[test]
    fn denominator_constant_is_normalized() {
        // t / (2 + 2t) reduces to (1/2 t) / (1 + t).
        let num = tpow(1);
        let den = LaurentPoly::constant(CycScalar::from_int(2))
            .add_ref(&tpow(1).scale(&CycScalar::from_int(2)));
        let f = RationalFn::new(num, den).unwrap();
        assert_eq!(f.den().coeff(0), CycScalar::one());
        let back = f.mul_ref(&RationalFn::from_laurent(
            LaurentPoly::constant(CycScalar::from_int(2))
                .add_ref(&tpow(1).scale(&CycScalar::from_int(2))),
        ));
        assert_eq!(back, RationalFn::from_laurent(tpow(1)));
    }

    #[test]
    fn field_inverse_round_trip() {
        let num = tpow(-1).add_ref(&tpow(2));
        let den = tpow(0).add_ref(&tpow(1));
        let f = RationalFn::new(num, den).unwrap();
        assert_eq!(f.mul_ref(&f.inv_ref().unwrap()), RationalFn::one());
    }
}
