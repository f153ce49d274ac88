//! Integer helpers: primality, prime powers, Lagrange interpolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

const WITNESSES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twenty primes as bases. Deterministic (and
/// proven correct) below 3.3e24; beyond that a strong probable-prime test.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `(p, v)` with `q = p^v` and `p` prime, or `None`.
pub fn prime_power_split(q: &BigInt) -> Result<Option<(BigInt, u32)>> {
    if *q < BigInt::from(2) {
        return Err(Error::Domain(format!("{q} is below 2")));
    }
    let bits = q.bits() as u32;
    for v in (1..=bits).rev() {
        let r = q.nth_root(v);
        for cand in [r.clone(), &r + 1] {
            if cand >= BigInt::from(2)
                && num_traits::pow(cand.clone(), v as usize) == *q
                && is_prime(&cand)
            {
                return Ok(Some((cand, v)));
            }
        }
    }
    Ok(None)
}

pub fn is_prime_power(q: &BigInt) -> bool {
    *q >= BigInt::from(2) && matches!(prime_power_split(q), Ok(Some(_)))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.abs();
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// The unique polynomial of degree `< points.len()` through the given points,
/// which must have integer coefficients.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Result<IntPolynomial> {
    let n = points.len();
    // Newton divided differences
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(x.clone()))
        .collect();
    let mut dd: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = &xs[i] - &xs[i - j];
            if den.is_zero() {
                return Err(Error::Domain("repeated interpolation node".into()));
            }
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // expand the Newton form into monomial coefficients
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n.max(1)];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n.max(1)];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::Consistency(format!(
                "interpolated coefficient {c} is not an integer"
            )));
        }
        out.push(c.to_integer());
    }
    Ok(IntPolynomial::new(out))
}

/// Bivariate integer polynomial `sum c[i][j] a^i q^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    c: Vec<Vec<BigInt>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    pub fn term(coef: BigInt, i: usize, j: usize) -> Self {
        let mut c = vec![vec![BigInt::zero(); j + 1]; i + 1];
        c[i][j] = coef;
        BiPoly { c }
    }

    pub fn constant(coef: BigInt) -> Self {
        Self::term(coef, 0, 0)
    }

    fn get(&self, i: usize, j: usize) -> BigInt {
        self.c
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_default()
    }

    fn dims(&self) -> (usize, usize) {
        (self.c.len(), self.c.iter().map(Vec::len).max().unwrap_or(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a1, b1) = self.dims();
        let (a2, b2) = o.dims();
        let (na, nb) = (a1.max(a2), b1.max(b2));
        BiPoly {
            c: (0..na)
                .map(|i| (0..nb).map(|j| self.get(i, j) + o.get(i, j)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        BiPoly {
            c: self
                .c
                .iter()
                .map(|r| r.iter().map(|x| x * k).collect())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1) = self.dims();
        let (a2, b2) = o.dims();
        if a1 == 0 || a2 == 0 {
            return Self::zero();
        }
        let mut c = vec![vec![BigInt::zero(); b1 + b2 - 1]; a1 + a2 - 1];
        for (i, r) in self.c.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (k, s) in o.c.iter().enumerate() {
                    for (l, y) in s.iter().enumerate() {
                        c[i + k][j + l] += x * y;
                    }
                }
            }
        }
        BiPoly { c }
    }

    /// Specialize the second variable, giving a polynomial in the first.
    pub fn at_second(&self, q: &BigInt) -> IntPolynomial {
        IntPolynomial::new(
            self.c
                .iter()
                .map(|r| r.iter().rev().fold(BigInt::zero(), |acc, x| acc * q + x))
                .collect(),
        )
    }

    /// Specialize the first variable, giving a polynomial in the second.
    pub fn at_first(&self, a: &BigInt) -> IntPolynomial {
        let (_, nb) = self.dims();
        IntPolynomial::new(
            (0..nb)
                .map(|j| {
                    (0..self.c.len())
                        .rev()
                        .fold(BigInt::zero(), |acc, i| acc * a + self.get(i, j))
                })
                .collect(),
        )
    }

    pub fn degree_first(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn degree_second(&self) -> usize {
        self.dims().1.saturating_sub(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn primes() {
        let ps: Vec<i64> = (0..60).filter(|&n| is_prime(&big(n))).collect();
        assert_eq!(
            ps,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(&big(18131)));
        assert!(!is_prime(&big(3215031751)));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_split(&big(32)).unwrap(), Some((big(2), 5)));
        assert_eq!(prime_power_split(&big(6)).unwrap(), None);
        assert_eq!(prime_power_split(&big(17)).unwrap(), Some((big(17), 1)));
        assert_eq!(prime_power_split(&big(9)).unwrap(), Some((big(3), 2)));
        assert!(prime_power_split(&big(1)).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = IntPolynomial::from_i64s(&[3, -2, 0, 5]);
        let pts: Vec<_> = (-2..2).map(|x| (big(x), f.eval(&big(x)))).collect();
        assert_eq!(interpolate(&pts).unwrap(), f);
    }

    #[test]
    fn bipoly_specialization() {
        // a^2 - 4q + 7
        let p = BiPoly::term(big(1), 2, 0)
            .add(&BiPoly::term(big(-4), 0, 1))
            .add(&BiPoly::constant(big(7)));
        assert_eq!(p.at_first(&big(3)), IntPolynomial::from_i64s(&[16, -4]));
        assert_eq!(p.at_second(&big(2)), IntPolynomial::from_i64s(&[-1, 0, 1]));
        let sq = p.mul(&p);
        assert_eq!(sq.at_first(&big(1)), p.at_first(&big(1)).pow(2));
    }
}
