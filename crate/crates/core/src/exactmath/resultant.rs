use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Degree at or below which the Sylvester determinant is used.
const SYLVESTER_MAX_DEGREE: usize = 6;

/// Resultant of two nonzero polynomials.
///
/// Sign convention: the Sylvester determinant with the coefficients of `f`
/// (descending) in the top rows, so `Res(f, g) = lc(f)^deg g * prod g(root of f)`.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    }
    if f.deg().max(g.deg()) <= SYLVESTER_MAX_DEGREE {
        Ok(sylvester_resultant(f, g))
    } else {
        Ok(subresultant_resultant(f, g))
    }
}

/// The Sylvester matrix of `f` and `g` (size `deg f + deg g`).
pub fn sylvester_matrix(f: &IntPolynomial, g: &IntPolynomial) -> IntegerMatrix {
    let m = f.deg();
    let n = g.deg();
    let size = m + n;
    let mut s = IntegerMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    s
}

pub fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    if f.deg() == 0 && g.deg() == 0 {
        return BigInt::one();
    }
    sylvester_matrix(f, g).determinant()
}

/// Resultant via the subresultant pseudo-remainder sequence.
pub fn subresultant_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let mut a = f.clone();
    let mut b = g.clone();
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return s * num_traits::pow(b.leading(), a.deg());
    }
    let ca = a.content();
    let cb = b.content();
    a = IntPolynomial::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = IntPolynomial::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let t = num_traits::pow(ca, b.deg()) * num_traits::pow(cb, a.deg());
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        let div = &gg * num_traits::pow(h.clone(), delta);
        b = IntPolynomial::new(r.coeffs().iter().map(|c| c / &div).collect());
        gg = a.leading();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.deg() == 0 {
            let da = a.deg();
            let hh = if da == 0 {
                h
            } else {
                num_traits::pow(b.leading(), da) / num_traits::pow(h, da - 1)
            };
            return s * t * hh;
        }
    }
}

/// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`, with `disc = 1` in degree 1.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::Domain(
                "discriminant of a constant polynomial".into(),
            ))
        }
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let v = r / f.leading();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            resultant(&p(&[-3, 1]), &p(&[-1, 1])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            resultant(&p(&[-3, 1]), &p(&[-4, 1])).unwrap(),
            BigInt::from(-1)
        );
        let f = p(&[5, -3, 1]);
        assert!(resultant(&f, &f).unwrap().is_zero());
        assert!(resultant(&IntPolynomial::zero(), &f).is_err());
    }

    #[test]
    fn constant_arguments() {
        // Res(c, g) = c^deg g
        assert_eq!(
            resultant(&p(&[3]), &p(&[1, 0, 1])).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(
            subresultant_resultant(&p(&[1, 0, 1]), &p(&[3])),
            BigInt::from(9)
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[5, -3, 1])).unwrap(), BigInt::from(-11));
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[2, -1, 1])).unwrap(), BigInt::from(-7));
        assert!(discriminant(&p(&[7])).is_err());
        // x^3 - 2: -27 * 4 = -108
        assert_eq!(
            discriminant(&p(&[-2, 0, 0, 1])).unwrap(),
            BigInt::from(-108)
        );
    }

    fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..=50, 1..=9).prop_filter_map("nonzero", |v| {
            let f = IntPolynomial::from_i64s(&v);
            (!f.is_zero()).then_some(f)
        })
    }

    proptest! {
        #[test]
        fn swap_sign_rule(f in poly_strategy(), g in poly_strategy()) {
            let a = resultant(&f, &g).unwrap();
            let b = resultant(&g, &f).unwrap();
            let sign = if (f.deg() * g.deg()) % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(a, b * BigInt::from(sign));
        }

        #[test]
        fn sylvester_agrees_with_subresultant(f in poly_strategy(), g in poly_strategy()) {
            prop_assert_eq!(sylvester_resultant(&f, &g), subresultant_resultant(&f, &g));
        }

        #[test]
        fn discriminant_of_product(
            f in prop::collection::vec(-20i64..=20, 1..=4),
            g in prop::collection::vec(-20i64..=20, 1..=4),
        ) {
            let mut f = f; f.push(1);
            let mut g = g; g.push(1);
            let f = IntPolynomial::from_i64s(&f);
            let g = IntPolynomial::from_i64s(&g);
            let r = resultant(&f, &g).unwrap();
            prop_assume!(!r.is_zero());
            let lhs = discriminant(&(&f * &g)).unwrap();
            let rhs = discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
