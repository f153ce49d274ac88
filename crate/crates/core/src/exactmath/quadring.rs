use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::IntPolynomial;

/// `a + b*sqrt(q)` with integer `a`, `b` and a fixed nonnegative radicand `q`.
///
/// Arithmetic is purely syntactic: `sqrt(q)` is never simplified, even when
/// `q` is a perfect square. Use [`QuadRingValue::collapse`] to get the integer
/// value in that case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadRingValue {
    pub a: BigInt,
    pub b: BigInt,
    pub q: BigInt,
}

impl QuadRingValue {
    pub fn new(a: BigInt, b: BigInt, q: BigInt) -> Self {
        assert!(!q.is_negative(), "radicand must be nonnegative");
        QuadRingValue { a, b, q }
    }

    pub fn integer(a: BigInt, q: BigInt) -> Self {
        Self::new(a, BigInt::zero(), q)
    }

    /// `sqrt(q)` itself.
    pub fn sqrt(q: BigInt) -> Self {
        Self::new(BigInt::zero(), 1.into(), q)
    }

    pub fn is_zero(&self) -> bool {
        // a + b sqrt(q) = 0 with q a square can cancel without a = b = 0
        self.sign() == Ordering::Equal
    }

    /// `(a + b sqrt q)(a - b sqrt q) = a^2 - q b^2`
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.q * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.q.clone())
    }

    /// Integer value, only when `q` is a perfect square.
    pub fn collapse(&self) -> Option<BigInt> {
        let r = self.q.sqrt();
        (&r * &r == self.q).then(|| &self.a + &self.b * r)
    }

    /// Exact sign of the real number `a + b sqrt(q)`.
    pub fn sign(&self) -> Ordering {
        sign_of_surd(&self.a, &self.b, &self.q)
    }
}

/// Sign of `a + b*sqrt(d)` for `d >= 0`, decided with integer arithmetic only.
pub fn sign_of_surd(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if d.is_zero() {
        num_bigint::Sign::NoSign
    } else {
        b.sign()
    };
    use num_bigint::Sign::*;
    match (sa, sb) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
        (Plus, Minus) | (Minus, Plus) => {
            // compare a^2 with b^2 d
            let lhs = a * a;
            let rhs = b * b * d;
            match lhs.cmp(&rhs) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => {
                    if sa == Plus {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
                Ordering::Less => {
                    if sb == Plus {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
            }
        }
    }
}

impl Add for &QuadRingValue {
    type Output = QuadRingValue;
    fn add(self, rhs: &QuadRingValue) -> QuadRingValue {
        assert_eq!(self.q, rhs.q, "radicand mismatch");
        QuadRingValue::new(&self.a + &rhs.a, &self.b + &rhs.b, self.q.clone())
    }
}

impl Sub for &QuadRingValue {
    type Output = QuadRingValue;
    fn sub(self, rhs: &QuadRingValue) -> QuadRingValue {
        assert_eq!(self.q, rhs.q, "radicand mismatch");
        QuadRingValue::new(&self.a - &rhs.a, &self.b - &rhs.b, self.q.clone())
    }
}

impl Mul for &QuadRingValue {
    type Output = QuadRingValue;
    fn mul(self, rhs: &QuadRingValue) -> QuadRingValue {
        assert_eq!(self.q, rhs.q, "radicand mismatch");
        QuadRingValue::new(
            &self.a * &rhs.a + &self.q * &self.b * &rhs.b,
            &self.a * &rhs.b + &rhs.a * &self.b,
            self.q.clone(),
        )
    }
}

impl Neg for &QuadRingValue {
    type Output = QuadRingValue;
    fn neg(self) -> QuadRingValue {
        QuadRingValue::new(-&self.a, -&self.b, self.q.clone())
    }
}

impl fmt::Display for QuadRingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.q)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
        }
    }
}

impl fmt::Debug for QuadRingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Evaluate `f(sqrt(q))` in `Z[sqrt q]` by Horner's rule.
pub fn eval_at_sqrt(f: &IntPolynomial, q: &BigInt) -> QuadRingValue {
    let x = QuadRingValue::sqrt(q.clone());
    let mut acc = QuadRingValue::integer(BigInt::zero(), q.clone());
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * &x) + &QuadRingValue::integer(c.clone(), q.clone());
    }
    acc
}

/// Evaluate `f(-sqrt(q))`.
pub fn eval_at_neg_sqrt(f: &IntPolynomial, q: &BigInt) -> QuadRingValue {
    eval_at_sqrt(&f.negate_variable(), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn eval_examples() {
        let v = eval_at_sqrt(&IntPolynomial::from_i64s(&[5, -3, 1]), &big(5));
        assert_eq!((v.a.clone(), v.b.clone()), (big(10), big(-3)));
        let v = eval_at_sqrt(&IntPolynomial::from_i64s(&[0, 0, 1]), &big(2));
        assert_eq!((v.a.clone(), v.b.clone()), (big(2), big(0)));
        // no radical simplification for square radicands
        let v = eval_at_sqrt(&IntPolynomial::from_i64s(&[1, 1]), &big(9));
        assert_eq!((v.a.clone(), v.b.clone()), (big(1), big(1)));
        assert_eq!(v.collapse(), Some(big(4)));
    }

    #[test]
    fn collapse_needs_square() {
        assert_eq!(QuadRingValue::sqrt(big(5)).collapse(), None);
    }

    #[test]
    fn multiplication_rule() {
        let x = QuadRingValue::new(big(2), big(3), big(7));
        let y = QuadRingValue::new(big(-1), big(4), big(7));
        let z = &x * &y;
        assert_eq!((z.a, z.b), (big(-2 + 7 * 12), big(8 - 3)));
    }

    #[test]
    fn exact_signs() {
        assert_eq!(sign_of_surd(&big(3), &big(-1), &big(9)), Ordering::Equal);
        assert_eq!(sign_of_surd(&big(5), &big(-1), &big(21)), Ordering::Greater);
        assert_eq!(sign_of_surd(&big(4), &big(-1), &big(21)), Ordering::Less);
        assert!(QuadRingValue::new(big(-3), big(1), big(9)).is_zero());
    }
}
