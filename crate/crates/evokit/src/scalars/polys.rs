//! Dense univariate polynomial helpers over any [`Field`].
//!
//! Polynomials are coefficient vectors in ascending degree with a nonzero
//! leading coefficient (the zero polynomial is the empty vector). These are
//! internal building blocks for Laurent-fraction reduction and Sturm chains.

use crate::field::Field;

pub fn normalize<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero<F: Field>(p: &[F]) -> bool {
    p.is_empty()
}

pub fn degree<F: Field>(p: &[F]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(F::zero);
        let y = b.get(k).cloned().unwrap_or_else(F::zero);
        out.push(x.add(&y));
    }
    normalize(out)
}

pub fn neg<F: Field>(a: &[F]) -> Vec<F> {
    a.iter().map(|c| c.neg()).collect()
}

pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    add(a, &neg(b))
}

pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    normalize(out)
}

pub fn scale<F: Field>(a: &[F], c: &F) -> Vec<F> {
    normalize(a.iter().map(|x| x.mul(c)).collect())
}

/// Euclidean division: returns (quotient, remainder) with deg r < deg b.
/// Panics on a zero divisor; callers guarantee b != 0.
pub fn divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let lead_inv = b
        .last()
        .unwrap()
        .inv()
        .expect("nonzero leading coefficient");
    let mut rem: Vec<F> = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), normalize(rem));
    }
    let qdeg = rem.len() - b.len();
    let mut quot = vec![F::zero(); qdeg + 1];
    for k in (0..=qdeg).rev() {
        let coeff = rem[k + b.len() - 1].mul(&lead_inv);
        if coeff.is_zero() {
            continue;
        }
        quot[k] = coeff.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(&coeff.mul(bj));
        }
    }
    (normalize(quot), normalize(rem))
}

/// Monic polynomial GCD via the Euclidean algorithm; gcd(0, 0) = 0.
pub fn gcd_monic<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = normalize(a.to_vec());
    let mut y = normalize(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(x)
}

pub fn make_monic<F: Field>(p: Vec<F>) -> Vec<F> {
    match p.last() {
        None => p,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero leading coefficient");
            scale(&p, &inv)
        }
    }
}

pub fn derivative<F: Field>(p: &[F]) -> Vec<F> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    let mut k = F::one();
    for c in &p[1..] {
        out.push(c.mul(&k));
        k = k.add(&F::one());
    }
    normalize(out)
}

pub fn eval<F: Field>(p: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(cs: &[i64]) -> Vec<BigRational> {
        normalize(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn divrem_recomposes() {
        let a = poly(&[2, 0, -3, 1, 4]);
        let b = poly(&[1, 2, 1]);
        let (quot, rem) = divrem(&a, &b);
        assert_eq!(add(&mul(&quot, &b), &rem), a);
        assert!(degree(&rem) < degree(&b));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x+1)(x+2) and (x+1)(x+3) share exactly (x+1).
        let p = mul(&poly(&[1, 1]), &poly(&[2, 1]));
        let r = mul(&poly(&[1, 1]), &poly(&[3, 1]));
        assert_eq!(gcd_monic(&p, &r), poly(&[1, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        // d/dx (x^3 - 2x) = 3x^2 - 2; value at 2 is 10.
        let p = poly(&[0, -2, 0, 1]);
        let d = derivative(&p);
        assert_eq!(d, poly(&[-2, 0, 3]));
        assert_eq!(eval(&d, &q(2)), q(10));
    }
}
