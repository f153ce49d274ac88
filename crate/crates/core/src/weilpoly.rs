//! Analysis of a single Weil polynomial `h` over `F_q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{
    discriminant, eval_at_neg_sqrt, eval_at_sqrt, factor_over_integers, prime_power_split,
    valuation, Bound, IntPolynomial, SturmSequence,
};

/// Outcome of [`validate_weil`]: `reason` explains a negative answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilCheck {
    pub is_weil: bool,
    pub reason: Option<String>,
}

impl WeilCheck {
    fn yes() -> Self {
        WeilCheck {
            is_weil: true,
            reason: None,
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        WeilCheck {
            is_weil: false,
            reason: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCheck {
    pub is_ideal: bool,
    pub reasons: Vec<String>,
}

/// Everything that can be said about `h` from `h` and `q` alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilPolyAnalysis {
    #[serde(serialize_with = "ser_poly")]
    pub h: IntPolynomial,
    #[serde(serialize_with = "ser_big")]
    pub q: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub p: BigInt,
    pub v: u32,
    pub g: usize,
    pub is_weil: bool,
    pub weil_reason: Option<String>,
    pub is_squarefree: bool,
    pub has_real_roots: bool,
    pub is_ordinary: bool,
    /// Root valuations from the Newton polygon, normalized by `v_p(q)`.
    pub newton_slopes: Vec<String>,
    pub is_ideal: bool,
    pub ideal_reasons: Vec<String>,
    #[serde(serialize_with = "ser_opt_poly")]
    pub real_weil_poly: Option<IntPolynomial>,
    #[serde(serialize_with = "ser_big")]
    pub middle_coeff: BigInt,
    #[serde(serialize_with = "ser_opt_big")]
    pub norm_pi_diff: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_big")]
    pub disc_order: Option<BigInt>,
    pub irreducible_factors: Vec<(String, u32)>,
}

pub(crate) fn ser_poly<S: serde::Serializer>(
    p: &IntPolynomial,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_csv())
}

pub(crate) fn ser_opt_poly<S: serde::Serializer>(
    p: &Option<IntPolynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_csv()),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_big<S: serde::Serializer>(
    x: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_opt_big<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

fn half_degree(h: &IntPolynomial) -> Result<usize> {
    match h.degree() {
        Some(d) if d >= 2 && d % 2 == 0 && h.is_monic() => Ok(d / 2),
        _ => Err(Error::NotWeil(format!(
            "{h} is not monic of positive even degree"
        ))),
    }
}

/// `a_{2g-i} = q^{g-i} a_i` for `0 <= i <= g`.
pub fn has_weil_symmetry(h: &IntPolynomial, q: &BigInt) -> bool {
    let Ok(g) = half_degree(h) else {
        return false;
    };
    (0..=g).all(|i| h.coeff(2 * g - i) * num_traits::pow(q.clone(), g - i) == h.coeff(i))
}

/// The unique monic `g` of degree `deg h / 2` with `h(x) = x^g g(x + q/x)`.
pub fn real_weil_poly(h: &IntPolynomial, q: &BigInt) -> Result<IntPolynomial> {
    let g = half_degree(h)?;
    if !has_weil_symmetry(h, q) {
        return Err(Error::NotWeil(format!(
            "{h} violates a_(2g-i) = q^(g-i) a_i for q = {q}"
        )));
    }
    // peel off c_k x^(g-k) (x^2 + q)^k from the top
    let x2q = IntPolynomial::new(vec![q.clone(), BigInt::zero(), BigInt::one()]);
    let mut rest = h.clone();
    let mut out = vec![BigInt::zero(); g + 1];
    for k in (0..=g).rev() {
        let c = rest.coeff(g + k);
        if !c.is_zero() {
            let term =
                (&x2q.pow(k as u32) * &IntPolynomial::monomial(BigInt::one(), g - k)).scale(&c);
            rest = &rest - &term;
        }
        out[k] = c;
    }
    if !rest.is_zero() {
        return Err(Error::NotWeil(format!(
            "{h} is not of the form x^g g(x + q/x)"
        )));
    }
    Ok(IntPolynomial::new(out))
}

/// Inverse of [`real_weil_poly`]: `x^g g(x + q/x)`.
pub fn weil_from_real(g_real: &IntPolynomial, q: &BigInt) -> IntPolynomial {
    let g = g_real.deg();
    let x2q = IntPolynomial::new(vec![q.clone(), BigInt::zero(), BigInt::one()]);
    let mut acc = IntPolynomial::zero();
    for (k, c) in g_real.coeffs().iter().enumerate() {
        let term = (&x2q.pow(k as u32) * &IntPolynomial::monomial(BigInt::one(), g - k)).scale(c);
        acc = &acc + &term;
    }
    acc
}

/// Whether `h` is a Weil polynomial for `q`: symmetric, and the real Weil
/// polynomial has all its roots real and inside `[-2 sqrt q, 2 sqrt q]`.
pub fn validate_weil(h: &IntPolynomial, q: &BigInt) -> WeilCheck {
    if *q < BigInt::from(2) {
        return WeilCheck::no(format!("q = {q} is below 2"));
    }
    let g_real = match real_weil_poly(h, q) {
        Ok(g) => g,
        Err(e) => return WeilCheck::no(e.to_string()),
    };
    let sf = g_real.squarefree_part();
    let Ok(seq) = SturmSequence::new(&sf) else {
        return WeilCheck::no("could not build a Sturm sequence");
    };
    // 2 sqrt q = sqrt(4q)
    let lo = Bound::Surd {
        a: BigInt::zero(),
        b: BigInt::from(-2),
        d: q.clone(),
    };
    let hi = Bound::Surd {
        a: BigInt::zero(),
        b: BigInt::from(2),
        d: q.clone(),
    };
    let mut inside = seq.count(&lo, &hi);
    if eval_at_neg_sqrt(&sf, &(q * 4)).is_zero() {
        inside += 1;
    }
    if inside != sf.deg() {
        return WeilCheck::no(format!(
            "real Weil polynomial {g_real} has {} of {} distinct roots real and in [-2 sqrt q, 2 sqrt q]",
            inside,
            sf.deg()
        ));
    }
    WeilCheck::yes()
}

/// Whether `sqrt q` or `-sqrt q` is a root of `h`.
pub fn has_real_roots(h: &IntPolynomial, q: &BigInt) -> bool {
    eval_at_sqrt(h, q).is_zero() || eval_at_neg_sqrt(h, q).is_zero()
}

/// Root valuations of `h` (normalized so that `v_p(q) = 1`), from the lower
/// convex hull of the points `(i, v_p(a_i))`, listed in ascending order.
pub fn newton_slopes(h: &IntPolynomial, p: &BigInt, v: u32) -> Vec<BigRational> {
    let pts: Vec<(i64, i64)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, p).map(|val| (i as i64, val as i64)))
        .collect();
    // lower hull, left to right
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point if it is on or above the segment
            if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::new();
    // a zero constant term means the root 0, valuation infinite; not a Weil case
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let slope = BigRational::new(BigInt::from(y1 - y2), BigInt::from((x2 - x1) * v as i64));
        for _ in 0..(x2 - x1) {
            out.push(slope.clone());
        }
    }
    out.sort();
    out
}

/// Newton polygon test: `g` roots of valuation 0 and `g` of valuation 1.
pub fn is_ordinary(h: &IntPolynomial, q: &BigInt) -> Result<bool> {
    let g = half_degree(h)?;
    let (p, v) =
        prime_power_split(q)?.ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
    let slopes = newton_slopes(h, &p, v);
    Ok(slopes.len() == 2 * g
        && slopes[..g].iter().all(Zero::is_zero)
        && slopes[g..].iter().all(One::is_one))
}

/// Squarefree, no real roots, and ordinary or `q` prime.
pub fn is_ideal(h: &IntPolynomial, q: &BigInt) -> Result<IdealCheck> {
    let (_, v) =
        prime_power_split(q)?.ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
    let mut reasons = Vec::new();
    let fac = factor_over_integers(h)?;
    if !fac.is_squarefree() {
        reasons.push("repeated irreducible factor".to_string());
    }
    if has_real_roots(h, q) {
        reasons.push("has a real root +-sqrt(q)".to_string());
    }
    if !is_ordinary(h, q)? && v != 1 {
        reasons.push("not ordinary and q is not prime".to_string());
    }
    Ok(IdealCheck {
        is_ideal: reasons.is_empty(),
        reasons,
    })
}

/// `h(sqrt q) h(-sqrt q) / q^g`, which is `Norm(pi - conj pi)` for irreducible `h`.
pub fn norm_pi_minus_conj(h: &IntPolynomial, q: &BigInt) -> Result<BigInt> {
    let g = half_degree(h)?;
    let prod = &eval_at_sqrt(h, q) * &eval_at_neg_sqrt(h, q);
    if !prod.b.is_zero() {
        return Err(Error::Consistency(
            "h(sqrt q) h(-sqrt q) is not rational".into(),
        ));
    }
    let den = num_traits::pow(q.clone(), g);
    let (quo, rem) = num_integer::Integer::div_rem(&prod.a, &den);
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "h(sqrt q) h(-sqrt q) = {} is not divisible by q^g = {den}",
            prod.a
        )));
    }
    Ok(quo)
}

/// `disc(g)^2 g(2 sqrt q) g(-2 sqrt q)` for the real Weil polynomial `g`:
/// the discriminant of `Z[pi, conj pi]`.
pub fn disc_order(h: &IntPolynomial, q: &BigInt) -> Result<BigInt> {
    if !factor_over_integers(h)?.is_irreducible() {
        return Err(Error::Domain(format!("{h} is reducible")));
    }
    let g = real_weil_poly(h, q)?;
    Ok(disc_order_from_real(&g, q))
}

pub(crate) fn disc_order_from_real(g: &IntPolynomial, q: &BigInt) -> BigInt {
    let dg = if g.deg() == 1 {
        BigInt::one()
    } else {
        discriminant(g).expect("degree >= 1")
    };
    let four_q = q * 4;
    let prod = &eval_at_sqrt(g, &four_q) * &eval_at_neg_sqrt(g, &four_q);
    debug_assert!(prod.b.is_zero());
    &dg * &dg * prod.a
}

/// `h(-x)`, made monic: the Weil polynomial of the quadratic twist.
pub fn twist(h: &IntPolynomial) -> IntPolynomial {
    h.negate_variable().normalize_sign()
}

/// Middle coefficient `a_g`.
pub fn middle_coeff(h: &IntPolynomial) -> BigInt {
    h.coeff(h.deg() / 2)
}

pub fn analyze(h: &IntPolynomial, q: &BigInt) -> Result<WeilPolyAnalysis> {
    let (p, v) = prime_power_split(q)?
        .ok_or_else(|| Error::Domain(format!("q = {q} is not a prime power")))?;
    let g = half_degree(h)?;
    let check = validate_weil(h, q);
    let fac = factor_over_integers(h)?;
    let real = real_weil_poly(h, q).ok();
    let has_real = has_real_roots(h, q);
    let slopes = newton_slopes(h, &p, v);
    let ordinary = is_ordinary(h, q)?;
    let ideal = is_ideal(h, q)?;
    let norm = if check.is_weil && !has_real {
        Some(norm_pi_minus_conj(h, q)?)
    } else {
        None
    };
    let disc = if check.is_weil && !has_real && fac.is_irreducible() {
        Some(disc_order(h, q)?)
    } else {
        None
    };
    Ok(WeilPolyAnalysis {
        h: h.clone(),
        q: q.clone(),
        p,
        v,
        g,
        is_weil: check.is_weil,
        weil_reason: check.reason,
        is_squarefree: fac.is_squarefree(),
        has_real_roots: has_real,
        is_ordinary: ordinary,
        newton_slopes: slopes.iter().map(|s| s.to_string()).collect(),
        is_ideal: ideal.is_ideal,
        ideal_reasons: ideal.reasons,
        real_weil_poly: real,
        middle_coeff: middle_coeff(h),
        norm_pi_diff: norm,
        disc_order: disc,
        irreducible_factors: fac
            .factors
            .iter()
            .map(|(f, m)| (f.to_string(), *m))
            .collect(),
    })
}

/// `(-1)^g g(2 sqrt q) g(-2 sqrt q)`, the real-polynomial side of the
/// cross-norm identity.
pub fn norm_via_real(h: &IntPolynomial, q: &BigInt) -> Result<BigInt> {
    let g = real_weil_poly(h, q)?;
    let four_q = q * 4;
    let prod = &eval_at_sqrt(&g, &four_q) * &eval_at_neg_sqrt(&g, &four_q);
    Ok(if g.deg() % 2 == 1 { -prod.a } else { prod.a })
}

/// Whether the middle coefficient is prime to `p`.
pub fn middle_coeff_is_unit(h: &IntPolynomial, q: &BigInt) -> Result<bool> {
    let (p, _) =
        prime_power_split(q)?.ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
    let a = middle_coeff(h);
    Ok(!num_integer::Integer::is_multiple_of(&a.abs(), &p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn example_53() -> IntPolynomial {
        p(&[16, 8, -12, -2, 7, -1, -3, 1, 1])
    }

    #[test]
    fn real_polynomials() {
        assert_eq!(
            real_weil_poly(&p(&[5, -3, 1]), &big(5)).unwrap(),
            p(&[-3, 1])
        );
        assert_eq!(
            real_weil_poly(&p(&[9, 0, -5, 0, 1]), &big(3)).unwrap(),
            p(&[-11, 0, 1])
        );
        assert_eq!(
            real_weil_poly(&p(&[9, -3, 1, -1, 1]), &big(3)).unwrap(),
            p(&[-5, -1, 1])
        );
        assert!(matches!(
            real_weil_poly(&p(&[1, 0, 1]), &big(5)),
            Err(Error::NotWeil(_))
        ));
        let g = real_weil_poly(&example_53(), &big(2)).unwrap();
        assert_eq!(weil_from_real(&g, &big(2)), example_53());
    }

    #[test]
    fn validity() {
        assert!(validate_weil(&p(&[5, -1, 1]), &big(5)).is_weil);
        assert!(!validate_weil(&p(&[1, 0, 1]), &big(5)).is_weil);
        assert!(validate_weil(&example_53(), &big(2)).is_weil);
        // x^2 - 5x + 5: symmetric but |roots| != sqrt 5
        assert!(!validate_weil(&p(&[5, -5, 1]), &big(5)).is_weil);
        // x^2 - 4x + 4 at q = 4: real root 2 = 2 sqrt(4)/2, boundary included
        assert!(validate_weil(&p(&[4, -4, 1]), &big(4)).is_weil);
    }

    #[test]
    fn real_roots() {
        assert!(has_real_roots(&p(&[-4, 0, 1]), &big(4)));
        assert!(!has_real_roots(&p(&[5, -3, 1]), &big(5)));
        let h = &p(&[-9, 0, 1]) * &p(&[9, -1, 1]);
        assert!(has_real_roots(&h, &big(9)));
        // (x - 3)^2 at q = 9 evaluates to 18 - 6 sqrt 9, which is zero
        assert!(has_real_roots(&p(&[9, -6, 1]), &big(9)));
    }

    #[test]
    fn ordinarity() {
        assert!(!is_ordinary(&p(&[2, 0, 1]), &big(2)).unwrap());
        assert!(is_ordinary(&p(&[9, 0, -5, 0, 1]), &big(3)).unwrap());
        assert!(is_ordinary(&p(&[5, -3, 1]), &big(5)).unwrap());
        let s = newton_slopes(&p(&[2, 0, 1]), &big(2), 1);
        assert_eq!(s, vec![BigRational::new(1.into(), 2.into()); 2]);
    }

    #[test]
    fn ideal_examples() {
        let h = &p(&[5, -3, 1]) * &p(&[5, -1, 1]);
        assert!(is_ideal(&h, &big(5)).unwrap().is_ideal);
        assert!(!is_ideal(&p(&[5, -3, 1]).pow(2), &big(5)).unwrap().is_ideal);
        assert!(is_ideal(&p(&[2, 0, 1]), &big(2)).unwrap().is_ideal);
    }

    #[test]
    fn norms() {
        assert_eq!(
            norm_pi_minus_conj(&p(&[3, -1, 1]), &big(3)).unwrap(),
            big(11)
        );
        assert_eq!(
            norm_pi_minus_conj(&p(&[9, 0, -5, 0, 1]), &big(3)).unwrap(),
            big(1)
        );
        assert_eq!(norm_pi_minus_conj(&example_53(), &big(2)).unwrap(), big(1));
    }

    #[test]
    fn order_discriminants() {
        assert_eq!(disc_order(&p(&[5, -3, 1]), &big(5)).unwrap(), big(-11));
        assert_eq!(disc_order(&p(&[2, -1, 1]), &big(2)).unwrap(), big(-7));
        assert_eq!(
            disc_order(&p(&[9, -3, 1, -1, 1]), &big(3)).unwrap(),
            big(16317)
        );
        let h = &p(&[5, -3, 1]) * &p(&[5, -1, 1]);
        assert!(disc_order(&h, &big(5)).is_err());
    }

    #[test]
    fn twists() {
        assert_eq!(twist(&p(&[5, -3, 1])), p(&[5, 3, 1]));
        assert_eq!(twist(&p(&[2, 0, 1])), p(&[2, 0, 1]));
        assert_eq!(twist(&p(&[9, -3, 1, -1, 1])), p(&[9, 3, 1, 1, 1]));
    }
}
