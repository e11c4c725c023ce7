//! Exact arithmetic in the cyclotomic field Q(zeta_8) = Q\[x\]/(x^4 + 1).
//!
//! `zeta` denotes a primitive 8th root of unity, so `zeta^2 = i` and
//! `zeta` itself is a square root of i. Every element is stored on the
//! basis {1, zeta, zeta^2, zeta^3} with `BigRational` coordinates.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Element of Q(zeta_8).
///
/// Invariants:
/// 1. `coords[k]` is the coordinate of zeta^k; reduction rule zeta^4 = -1.
/// 2. `BigRational` keeps every coordinate in lowest terms with positive
///    denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    coords: [BigRational; 4],
}

fn rat_i64(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CycScalar {
    pub fn from_coords(coords: [BigRational; 4]) -> Self {
        CycScalar { coords }
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.coords
    }

    pub fn zero() -> Self {
        CycScalar::from_coords([
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
    }

    pub fn one() -> Self {
        CycScalar::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar::from_coords([
            r,
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
    }

    pub fn from_int(n: i64) -> Self {
        CycScalar::from_rational(rat_i64(n, 1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        CycScalar::from_rational(rat_i64(num, den))
    }

    /// The imaginary unit i = zeta^2.
    pub fn i() -> Self {
        let mut c = CycScalar::zero();
        c.coords[2] = BigRational::one();
        c
    }

    /// zeta, a primitive 8th root of unity.
    pub fn zeta() -> Self {
        let mut c = CycScalar::zero();
        c.coords[1] = BigRational::one();
        c
    }

    /// sqrt(i); identical to [`CycScalar::zeta`].
    pub fn sqrt_i() -> Self {
        CycScalar::zeta()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        for (a, b) in coords.iter_mut().zip(other.coords.iter()) {
            *a += b;
        }
        CycScalar { coords }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        for (a, b) in coords.iter_mut().zip(other.coords.iter()) {
            *a -= b;
        }
        CycScalar { coords }
    }

    pub fn neg_ref(&self) -> Self {
        let coords = [
            -self.coords[0].clone(),
            -self.coords[1].clone(),
            -self.coords[2].clone(),
            -self.coords[3].clone(),
        ];
        CycScalar { coords }
    }

    /// Product with reduction by zeta^4 = -1: the degree-(k+4) part of the
    /// convolution re-enters at degree k with a sign flip.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let a = &self.coords;
        let b = &other.coords;
        let mut raw = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for i in 0..4 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b[j].is_zero() {
                    continue;
                }
                raw[i + j] += &a[i] * &b[j];
            }
        }
        let mut coords = [
            raw[0].clone(),
            raw[1].clone(),
            raw[2].clone(),
            raw[3].clone(),
        ];
        for k in 0..3 {
            coords[k] -= &raw[k + 4];
        }
        CycScalar { coords }
    }

    /// Galois conjugate zeta -> zeta^k for k in {1, 3, 5, 7}.
    pub fn galois(&self, k: u8) -> Self {
        let c = &self.coords;
        let coords = match k {
            1 => c.clone(),
            // zeta -> zeta^3: zeta^2 -> zeta^6 = -zeta^2, zeta^3 -> zeta^9 = zeta.
            3 => [c[0].clone(), c[3].clone(), -c[2].clone(), c[1].clone()],
            // zeta -> zeta^5 = -zeta: even powers fixed, odd powers negated.
            5 => [c[0].clone(), -c[1].clone(), c[2].clone(), -c[3].clone()],
            // zeta -> zeta^7: complex conjugation.
            7 => [c[0].clone(), -c[3].clone(), -c[2].clone(), -c[1].clone()],
            _ => panic!("galois exponent must be odd and in 1..8, got {k}"),
        };
        CycScalar { coords }
    }

    /// Complex conjugate (the Galois map zeta -> zeta^-1).
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Field norm down to Q: the product of all four Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let p = self
            .galois(3)
            .mul_ref(&self.galois(5))
            .mul_ref(&self.galois(7))
            .mul_ref(self);
        debug_assert!(p.is_rational(), "norm must land in Q");
        p.coords[0].clone()
    }

    /// Multiplicative inverse via conjugates: 1/a = sigma3(a) sigma5(a) sigma7(a) / N(a).
    pub fn inv_ref(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self
            .galois(3)
            .mul_ref(&self.galois(5))
            .mul_ref(&self.galois(7));
        let n = self.mul_ref(&p);
        debug_assert!(n.is_rational() && !n.coords[0].is_zero());
        let scale = n.coords[0].recip();
        Ok(p.scale(&scale))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let coords = [
            &self.coords[0] * r,
            &self.coords[1] * r,
            &self.coords[2] * r,
            &self.coords[3] * r,
        ];
        CycScalar { coords }
    }

    /// Decomposition over the real subfield Q(sqrt 2): returns (re, im) with
    /// self = re + i*im, each given as (a, b) meaning a + b*sqrt(2).
    /// Uses zeta = (sqrt2/2)(1 + i) and zeta^3 = (sqrt2/2)(-1 + i).
    pub fn real_imag_sqrt2(&self) -> ((BigRational, BigRational), (BigRational, BigRational)) {
        let c = &self.coords;
        let half = rat_i64(1, 2);
        let re = (c[0].clone(), (&c[1] - &c[3]) * &half);
        let im = (c[2].clone(), (&c[1] + &c[3]) * &half);
        (re, im)
    }

    /// f64 approximation (re, im); diagnostic only, never authoritative.
    pub fn approx(&self) -> (f64, f64) {
        fn f(r: &BigRational) -> f64 {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        }
        let ((ra, rb), (ia, ib)) = self.real_imag_sqrt2();
        let s = std::f64::consts::SQRT_2;
        (f(&ra) + f(&rb) * s, f(&ia) + f(&ib) * s)
    }

    /// The eight roots of unity of Q(zeta_8): zeta^0 .. zeta^7.
    pub fn roots_of_unity() -> Vec<CycScalar> {
        let mut out = Vec::with_capacity(8);
        let mut cur = CycScalar::one();
        for _ in 0..8 {
            out.push(cur.clone());
            cur = cur.mul_ref(&CycScalar::zeta());
        }
        out
    }
}

impl crate::field::Ring for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn one() -> Self {
        CycScalar::one()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
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

impl crate::field::Field for CycScalar {
    fn inv(&self) -> Result<Self> {
        self.inv_ref()
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.add_ref(rhs)
    }
}
impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.sub_ref(rhs)
    }
}
impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul_ref(rhs)
    }
}
impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}
impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        self.add_ref(&rhs)
    }
}
impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        self.sub_ref(&rhs)
    }
}
impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        self.mul_ref(&rhs)
    }
}
impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

/// Canonical text form; round-trips through `parse_scalar`.
/// The zeta^2 coordinate prints as `i`, the zeta coordinate as `zeta`.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let symbols = ["", "zeta", "i", "zeta^3"];
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign_negative = c.is_negative();
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", symbols[k])?;
            } else {
                write!(f, "{mag}*{}", symbols[k])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar({self})")
    }
}
