use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use super::quadring::sign_of_surd;
use crate::error::{Error, Result};

/// A point on the extended real line usable as a Sturm interval endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    PosInfinity,
    Rational(BigRational),
    /// `a + b*sqrt(d)` with integer data and `d >= 0`.
    Surd {
        a: BigInt,
        b: BigInt,
        d: BigInt,
    },
}

impl Bound {
    pub fn int(x: i64) -> Self {
        Bound::Rational(BigRational::from_integer(x.into()))
    }

    pub fn integer(x: BigInt) -> Self {
        Bound::Rational(BigRational::from_integer(x))
    }
}

/// Sturm sequence of a squarefree polynomial, each term a primitive integer
/// polynomial obtained from the previous remainders by positive rescaling.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    terms: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Domain(
                "Sturm sequence of the zero polynomial".into(),
            ));
        }
        if !f.is_squarefree() {
            return Err(Error::Domain(format!("{f} is not squarefree")));
        }
        let mut terms = vec![f.clone()];
        if f.deg() == 0 {
            return Ok(SturmSequence { terms });
        }
        terms.push(f.derivative());
        loop {
            let n = terms.len();
            let a = &terms[n - 2];
            let b = &terms[n - 1];
            if b.deg() == 0 {
                break;
            }
            // prem = lc(b)^k * a mod b; the true remainder differs by a positive
            // factor unless lc(b)^k is negative
            let k = (a.deg() - b.deg() + 1) as u32;
            let mut r = a.pseudo_rem(b);
            if b.leading().is_negative() && k % 2 == 1 {
                r = -&r;
            }
            let r = -&r;
            if r.is_zero() {
                break;
            }
            let c = r.content();
            let r = IntPolynomial::new(r.coeffs().iter().map(|x| x / &c).collect());
            terms.push(r);
        }
        Ok(SturmSequence { terms })
    }

    pub fn terms(&self) -> &[IntPolynomial] {
        &self.terms
    }

    fn sign_changes(&self, at: &Bound) -> usize {
        let mut changes = 0;
        let mut last = Ordering::Equal;
        for t in &self.terms {
            let s = sign_at(t, at);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let a = self.sign_changes(lo);
        let b = self.sign_changes(hi);
        a.saturating_sub(b)
    }
}

/// Exact sign of `f` at a bound.
pub fn sign_at(f: &IntPolynomial, at: &Bound) -> Ordering {
    if f.is_zero() {
        return Ordering::Equal;
    }
    match at {
        Bound::PosInfinity => f.leading().sign().into_ordering(),
        Bound::NegInfinity => {
            let s = f.leading().sign().into_ordering();
            if f.deg() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }
        Bound::Rational(x) if x.is_integer() => f.eval(x.numer()).sign().into_ordering(),
        Bound::Rational(x) => f.eval_rational(x).numer().sign().into_ordering(),
        Bound::Surd { a, b, d } => {
            // evaluate in Z[sqrt d] with the point a + b sqrt d
            let mut acc_a = BigInt::zero();
            let mut acc_b = BigInt::zero();
            for c in f.coeffs().iter().rev() {
                let na = &acc_a * a + &acc_b * b * d + c;
                let nb = &acc_a * b + &acc_b * a;
                acc_a = na;
                acc_b = nb;
            }
            sign_of_surd(&acc_a, &acc_b, d)
        }
    }
}

trait SignExt {
    fn into_ordering(self) -> Ordering;
}

impl SignExt for num_bigint::Sign {
    fn into_ordering(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// Number of distinct real roots of a squarefree `f` in `(lo, hi]`.
pub fn sturm_count(f: &IntPolynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(SturmSequence::new(f)?.count(lo, hi))
}

/// Cauchy bound: every real root has absolute value below the result.
pub fn root_bound(f: &IntPolynomial) -> BigInt {
    let lc = f.leading().abs();
    let m = f.coeffs()[..f.deg()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // 1 + ceil(m / lc)
    BigInt::one() + (m + &lc - BigInt::one()) / lc + BigInt::one()
}

/// All integer roots of a nonzero polynomial, ascending.
///
/// Works on the squarefree part: the real line is bisected over integer
/// endpoints, guided by Sturm counts, down to unit intervals `(n-1, n]`, and
/// each surviving `n` is checked by exact evaluation.
pub fn integer_roots(f: &IntPolynomial) -> Result<Vec<BigInt>> {
    if f.is_zero() {
        return Err(Error::Domain(
            "every integer is a root of the zero polynomial".into(),
        ));
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let sf = f.squarefree_part();
    if sf.deg() == 1 {
        let (c0, c1) = (sf.coeff(0), sf.coeff(1));
        let r = -&c0 / &c1;
        return Ok(if &r * &c1 == -c0 { vec![r] } else { Vec::new() });
    }
    let seq = SturmSequence::new(&sf)?;
    let bound = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = seq.count(&Bound::integer(lo.clone()), &Bound::integer(hi.clone()));
        if n == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if sf.eval(&hi).is_zero() {
                out.push(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi) >> 1;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn counts() {
        let all = (Bound::NegInfinity, Bound::PosInfinity);
        assert_eq!(sturm_count(&p(&[-11, 0, 1]), &all.0, &all.1).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &all.0, &all.1).unwrap(), 0);
        assert_eq!(
            sturm_count(&p(&[-3, 1]), &Bound::int(0), &Bound::int(4)).unwrap(),
            1
        );
        assert!(sturm_count(&p(&[1, 2, 1]), &all.0, &all.1).is_err());
    }

    #[test]
    fn surd_endpoints() {
        // x^2 - 11 has roots +-sqrt(11); (-2 sqrt 3, 2 sqrt 3] contains both
        let f = p(&[-11, 0, 1]);
        let lo = Bound::Surd {
            a: 0.into(),
            b: (-2).into(),
            d: 3.into(),
        };
        let hi = Bound::Surd {
            a: 0.into(),
            b: 2.into(),
            d: 3.into(),
        };
        assert_eq!(sturm_count(&f, &lo, &hi).unwrap(), 2);
        // and the endpoint itself counts on the right
        let hi = Bound::Surd {
            a: 0.into(),
            b: 1.into(),
            d: 11.into(),
        };
        assert_eq!(sturm_count(&f, &Bound::int(0), &hi).unwrap(), 1);
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(integer_roots(&p(&[-4, 0, 1])).unwrap(), ints(&[-2, 2]));
        assert_eq!(integer_roots(&p(&[-9, 2])).unwrap(), ints(&[]));
        assert_eq!(integer_roots(&p(&[-6, -1, 1])).unwrap(), ints(&[-2, 3]));
        assert!(integer_roots(&IntPolynomial::zero()).is_err());
        // repeated and zero roots
        assert_eq!(integer_roots(&p(&[0, 0, 1, -2, 1])).unwrap(), ints(&[0, 1]));
    }

    proptest! {
        #[test]
        fn integer_roots_match_exhaustive_scan(v in prop::collection::vec(-30i64..=30, 2..=7)) {
            let f = IntPolynomial::from_i64s(&v);
            prop_assume!(f.deg() >= 1);
            let c = f.height() + BigInt::one();
            let c: i64 = c.try_into().unwrap();
            let brute: Vec<BigInt> = (-c..=c)
                .map(BigInt::from)
                .filter(|x| f.eval(x).is_zero())
                .collect();
            prop_assert_eq!(integer_roots(&f).unwrap(), brute);
        }

        #[test]
        fn real_root_count_of_built_products(
            lin in prop::collection::btree_set(-20i64..=20, 0..=4),
            quad in prop::collection::vec((-10i64..=10, 1i64..=20), 0..=3),
        ) {
            // distinct linear factors plus quadratics x^2 + bx + c with negative
            // discriminant contribute deg - 2 * #pairs real roots
            let mut f = IntPolynomial::one();
            let mut pairs = 0;
            for r in &lin {
                f = &f * &p(&[-r, 1]);
            }
            for (b, extra) in &quad {
                let c = b * b + extra; // b^2 - 4c < 0
                let q = p(&[c, *b, 1]);
                if f.gcd(&q).deg() > 0 { continue; }
                f = &f * &q;
                pairs += 1;
            }
            prop_assume!(f.deg() >= 1);
            let n = sturm_count(&f, &Bound::NegInfinity, &Bound::PosInfinity).unwrap();
            prop_assert_eq!(n, f.deg() - 2 * pairs);
        }
    }
}
