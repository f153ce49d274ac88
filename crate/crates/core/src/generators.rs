//! Weil generators of a single CM field `K = F(gamma)`.
//!
//! Every Weil generator has the form `alpha = (u (gamma - conj gamma) + eta + a) / 2`
//! with `u` a unit of `O_F`, `eta` in the field's T-set and `a` an integer.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactmath::{
    discriminant, factor_over_integers, integer_roots, is_prime_power, IntPolynomial, IntegerMatrix,
};
use crate::numfield::{CMElement, CMFieldData, RealElement};
use crate::weilpoly::{
    disc_order_from_real, is_ideal, real_weil_poly, ser_big, ser_poly, weil_from_real,
};

/// Coordinates `(u, eta, a)` of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Triple {
    #[serde(serialize_with = "ser_real")]
    pub u: RealElement,
    pub eta_index: usize,
    #[serde(serialize_with = "ser_big")]
    pub a: BigInt,
}

fn ser_real<S: serde::Serializer>(x: &RealElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeilGeneratorRecord {
    pub field_id: String,
    /// `None` for members supplied as bare polynomials.
    pub triple: Option<Triple>,
    #[serde(serialize_with = "ser_big")]
    pub q: BigInt,
    #[serde(serialize_with = "ser_poly")]
    pub h: IntPolynomial,
    /// Minimal polynomial of `alpha + conj alpha`.
    #[serde(serialize_with = "ser_poly")]
    pub g_real: IntPolynomial,
}

impl WeilGeneratorRecord {
    /// Dimension of the variety, `deg h / 2`.
    pub fn dimension(&self) -> usize {
        self.h.deg() / 2
    }

    pub fn key(&self) -> (&BigInt, &IntPolynomial) {
        (&self.q, &self.h)
    }
}

impl Ord for WeilGeneratorRecord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key()
            .cmp(&o.key())
            .then_with(|| self.field_id.cmp(&o.field_id))
            .then_with(|| format!("{:?}", self.triple).cmp(&format!("{:?}", o.triple)))
    }
}

impl PartialOrd for WeilGeneratorRecord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A record for a polynomial supplied directly, with no field data.
pub fn record_from_poly(
    field_id: &str,
    h: &IntPolynomial,
    q: &BigInt,
) -> Result<WeilGeneratorRecord> {
    Ok(WeilGeneratorRecord {
        field_id: field_id.to_string(),
        triple: None,
        q: q.clone(),
        h: h.clone(),
        g_real: real_weil_poly(h, q)?,
    })
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn as_integer(x: &RealElement) -> Option<BigInt> {
    let r = x.as_rational()?;
    r.is_integer().then(|| r.to_integer())
}

/// `alpha` for a triple, without integrality checks.
pub fn alpha_of(k: &CMFieldData, t: &Triple) -> Result<CMElement> {
    let rel = k.rel()?;
    let f = &k.base;
    let eta = f
        .t_set()
        .get(t.eta_index)
        .ok_or_else(|| Error::Domain(format!("eta index {} out of range", t.eta_index)))?;
    let beta = eta.add(&RealElement::integer(t.a.clone()));
    let x = f.mul(&t.u, &rel.b).add(&beta).scale(&half());
    Ok(CMElement::new(x, t.u.clone()))
}

/// Builds the record for `(u, eta, a)`, or explains why there is none.
pub fn generator_from_triple(
    k: &CMFieldData,
    u: &RealElement,
    eta_index: usize,
    a: &BigInt,
) -> std::result::Result<WeilGeneratorRecord, String> {
    let f = &k.base;
    if !f.is_unit(u) {
        return Err(format!("{u} is not a unit"));
    }
    let t = Triple {
        u: u.clone(),
        eta_index,
        a: a.clone(),
    };
    let alpha = alpha_of(k, &t).map_err(|e| e.to_string())?;
    if !alpha.is_integral() {
        return Err(format!(
            "alpha = {} + ({})*gamma is not integral",
            alpha.x, alpha.y
        ));
    }
    let n = k.norm_to_f(&alpha).map_err(|e| e.to_string())?;
    let q = as_integer(&n)
        .ok_or_else(|| format!("alpha * conj(alpha) = {n} is not a rational integer"))?;
    if q < BigInt::from(2) || !is_prime_power(&q) {
        return Err(format!("q = {q} is not a prime power"));
    }
    let beta = k.trace_to_f(&alpha).map_err(|e| e.to_string())?;
    let g_real = f.char_poly(&beta).ok_or("trace is not integral")?;
    Ok(WeilGeneratorRecord {
        field_id: k.id.clone(),
        triple: Some(t),
        h: weil_from_real(&g_real, &q),
        q,
        g_real,
    })
}

/// Recovers the triple of a Weil generator `alpha = x + y gamma`.
pub fn decompose_generator(k: &CMFieldData, alpha: &CMElement) -> Result<Triple> {
    let f = &k.base;
    let not_gen = |why: String| Error::Domain(format!("not a Weil generator: {why}"));
    if !alpha.is_integral() {
        return Err(not_gen("not integral".into()));
    }
    // alpha - conj alpha = y (gamma - conj gamma)
    let u = alpha.y.clone();
    if !f.is_unit(&u) {
        return Err(not_gen(format!("gamma coordinate {u} is not a unit")));
    }
    let beta = k.trace_to_f(alpha)?;
    let n = k.norm_to_f(alpha)?;
    match as_integer(&n) {
        Some(q) if q >= BigInt::from(2) && is_prime_power(&q) => {}
        _ => {
            return Err(not_gen(format!(
                "alpha * conj(alpha) = {n} is not a prime power"
            )))
        }
    }
    for (i, eta) in f.t_set().iter().enumerate() {
        if let Some(a) = as_integer(&beta.sub(eta)) {
            let t = Triple { u, eta_index: i, a };
            debug_assert_eq!(&alpha_of(k, &t)?, alpha);
            return Ok(t);
        }
    }
    Err(not_gen(format!(
        "trace {beta} is not a T-set element plus an integer"
    )))
}

/// Whether a root of `h` is a Weil generator of `K`.
pub fn is_weil_generator(k: &CMFieldData, h: &IntPolynomial, q: &BigInt) -> bool {
    find_triple(k, h, q).is_some()
}

/// The triple of a root of `h` in `K`, if that root is a Weil generator.
pub fn find_triple(k: &CMFieldData, h: &IntPolynomial, q: &BigInt) -> Option<Triple> {
    let rel = k.rel.as_ref()?;
    let f = &k.base;
    if h.deg() != k.degree() || *q < BigInt::from(2) {
        return None;
    }
    let g = real_weil_poly(h, q).ok()?;
    if g.deg() != f.degree() || disc_order_from_real(&g, q) != k.disc_k {
        return None;
    }
    let disc_g = if g.deg() == 1 {
        BigInt::one()
    } else {
        discriminant(&g).ok()?
    };
    if &disc_g != f.disc() {
        return None;
    }
    let ngd = k.norm_gamma_diff().ok()?;
    let four_q = RealElement::integer(q * 4);
    for (i, eta) in f.t_set().iter().enumerate() {
        // tr(eta + a) = -g_1
        let tr_eta = f.trace(eta).to_integer();
        let num = -g.coeff(g.deg() - 1) - tr_eta;
        let n = BigInt::from(f.degree());
        if !(&num % &n).is_zero() {
            continue;
        }
        let a = num / n;
        let beta = eta.add(&RealElement::integer(a.clone()));
        if f.char_poly(&beta).as_ref() != Some(&g) {
            continue;
        }
        let Ok(w) = f.div(&four_q.sub(&f.square(&beta)), &ngd) else {
            continue;
        };
        let Some(u) = f.unit_square_root(&w) else {
            continue;
        };
        let x = f.mul(&u, &rel.b).add(&beta).scale(&half());
        if x.is_integral() {
            return Some(Triple { u, eta_index: i, a });
        }
    }
    None
}

/// `Norm_{F/Q}((eta + a)^2 - 4q) - disc_K / disc_F^2` as a polynomial in `a`.
pub fn trace_equation(k: &CMFieldData, eta_index: usize, q: &BigInt) -> Result<IntPolynomial> {
    let f = &k.base;
    let ratio = k.disc_ratio()?;
    let four_q = IntPolynomial::constant(q * 4);
    let p = if f.degree() == 1 {
        &(&IntPolynomial::from_i64s(&[0, 0, 1]) - &four_q) - &IntPolynomial::constant(ratio)
    } else {
        let (s, t) = f.eta_relation();
        let e = if eta_index == 0 { 1 } else { -1 };
        // (e eta + a)^2 - 4q = z0 + z1 eta, using eta^2 = -s eta - t
        let z0 = &IntPolynomial::new(vec![-t.clone(), BigInt::zero(), BigInt::one()]) - &four_q;
        let z1 = IntPolynomial::new(vec![-s.clone(), BigInt::from(2 * e)]);
        let norm = &(&(&z0 * &z0) - &(&z0 * &z1).scale(s)) + &(&z1 * &z1).scale(t);
        &norm - &IntPolynomial::constant(ratio)
    };
    Ok(p)
}

/// All Weil generators of `K` of norm `q`, one record per minimal polynomial,
/// sorted by `(q, h)`.
pub fn enumerate_generators(k: &CMFieldData, q: &BigInt) -> Result<Vec<WeilGeneratorRecord>> {
    if *q < BigInt::from(2) || !is_prime_power(q) {
        return Err(Error::Domain(format!("q = {q} is not a prime power")));
    }
    if k.rel.is_none() {
        return Ok(Vec::new());
    }
    let f = &k.base;
    let ngd = k.norm_gamma_diff()?;
    let four_q = RealElement::integer(q * 4);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, eta) in f.t_set().iter().enumerate() {
        let p = trace_equation(k, i, q)?;
        for a in integer_roots(&p)? {
            let beta = eta.add(&RealElement::integer(a.clone()));
            let w = f.div(&four_q.sub(&f.square(&beta)), &ngd)?;
            let Some(u) = f.unit_square_root(&w) else {
                continue;
            };
            for u in [u.neg(), u] {
                if let Ok(r) = generator_from_triple(k, &u, i, &a) {
                    if seen.insert(r.h.clone()) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Generators for every prime power `2 <= q <= q_max`.
pub fn enumerate_generators_upto(k: &CMFieldData, q_max: u64) -> Result<Vec<WeilGeneratorRecord>> {
    let mut out = Vec::new();
    for q in 2..=q_max {
        let q = BigInt::from(q);
        if is_prime_power(&q) {
            out.extend(enumerate_generators(k, &q)?);
        }
    }
    Ok(out)
}

/// `[O_K : Z[pi, conj pi]]` for irreducible `h` of degree at most 8, computed
/// from the Hermite form of the lattice spanned by `pi^i conj(pi)^j` inside
/// `Q[x]/(h)`.
pub fn maximality_index(h: &IntPolynomial, q: &BigInt, disc_k: &BigInt) -> Result<BigInt> {
    let n = h.deg();
    if n == 0 || n > 8 || !h.is_monic() {
        return Err(Error::Capability(format!(
            "lattice oracle needs monic degree 1..=8, got {h}"
        )));
    }
    if !factor_over_integers(h)?.is_irreducible() {
        return Err(Error::Domain(format!("{h} is reducible")));
    }
    let h0 = BigRational::from_integer(h.coeff(0));
    let mulx = |v: &[BigRational]| -> Vec<BigRational> {
        // v * x mod h
        let mut w = vec![BigRational::zero(); n];
        let top = v[n - 1].clone();
        for i in (1..n).rev() {
            w[i] = v[i - 1].clone();
        }
        for (i, wi) in w.iter_mut().enumerate() {
            *wi -= &top * BigRational::from_integer(h.coeff(i));
        }
        w
    };
    let mul = |u: &[BigRational], v: &[BigRational]| -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); n];
        let mut xp = v.to_vec();
        for ui in u {
            for (a, b) in acc.iter_mut().zip(&xp) {
                *a += ui * b;
            }
            xp = mulx(&xp);
        }
        acc
    };
    // conj(pi) = q / pi = -q (a_1 + a_2 x + ... + x^(n-1)) / a_0
    let qr = BigRational::from_integer(q.clone());
    let pibar: Vec<BigRational> = (1..=n)
        .map(|i| -(&qr * BigRational::from_integer(h.coeff(i))) / &h0)
        .collect();
    let mut pi_pow = Vec::with_capacity(n);
    let mut one = vec![BigRational::zero(); n];
    one[0] = BigRational::one();
    let mut cur = one.clone();
    for _ in 0..n {
        pi_pow.push(cur.clone());
        cur = mulx(&cur);
    }
    let mut gens = Vec::new();
    let mut bar = one;
    for _ in 0..n {
        for p in &pi_pow {
            gens.push(mul(p, &bar));
        }
        bar = mul(&bar, &pibar);
    }
    let l = gens.iter().flatten().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let lr = BigRational::from_integer(l.clone());
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| v.iter().map(|c| (c * &lr).to_integer()).collect())
        .collect();
    let hnf = IntegerMatrix::from_rows(rows).hermite_normal_form();
    if hnf.rows() != n {
        return Err(Error::Consistency(
            "lattice of pi, conj pi is not full rank".into(),
        ));
    }
    let det = hnf.determinant().abs();
    // disc(lattice) = det^2 disc(h) / l^(2n)
    let num = &det * &det * discriminant(h)?;
    let den = num_traits::pow(l, 2 * n);
    let lattice_disc = BigRational::new(num, den);
    let ratio = lattice_disc / BigRational::from_integer(disc_k.clone());
    if !ratio.is_integer() {
        return Err(Error::Consistency(format!(
            "disc of Z[pi, conj pi] is not a multiple of disc_K = {disc_k}"
        )));
    }
    let r = ratio.to_integer();
    let s = num_integer::Roots::sqrt(&r);
    if &s * &s != r {
        return Err(Error::Consistency(format!(
            "index squared {r} is not a square"
        )));
    }
    Ok(s)
}

/// Independent maximality check: `Z[pi, conj pi] = O_K`.
pub fn brute_force_maximality(k: &CMFieldData, h: &IntPolynomial, q: &BigInt) -> Result<bool> {
    Ok(maximality_index(h, q, &k.disc_k)?.is_one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    True,
    False,
    UnknownField,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reason: String,
    /// Catalog field that accepted the polynomial, when any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_id: Option<String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, reason: impl Into<String>) -> Self {
        Verdict {
            outcome,
            reason: reason.into(),
            field_id: None,
        }
    }

    pub fn is_true(&self) -> bool {
        self.outcome == Outcome::True
    }
}

/// Super-isolation of the simple variety with irreducible ideal Weil
/// polynomial `h`, decided against the catalog.
pub fn is_super_isolated_simple(
    h: &IntPolynomial,
    q: &BigInt,
    catalog: &Catalog,
) -> Result<Verdict> {
    let ideal = is_ideal(h, q)?;
    if !ideal.is_ideal {
        return Err(Error::Domain(format!(
            "{h} is not ideal: {}",
            ideal.reasons.join("; ")
        )));
    }
    if !factor_over_integers(h)?.is_irreducible() {
        return Err(Error::Domain(format!("{h} is reducible")));
    }
    let g = real_weil_poly(h, q)?;
    let disc_f = if g.deg() == 1 {
        BigInt::one()
    } else {
        discriminant(&g)?
    };
    let disc_k = disc_order_from_real(&g, q);
    let degree = h.deg();
    let matches = catalog.matching(degree, &disc_f, &disc_k);
    for m in &matches {
        if is_weil_generator(m, h, q) {
            let mut v = if m.class_number_one {
                Verdict::new(
                    Outcome::True,
                    format!("pi is a Weil generator of {} (class number one)", m.id),
                )
            } else {
                Verdict::new(
                    Outcome::False,
                    format!("{} has class number greater than one", m.id),
                )
            };
            v.field_id = Some(m.id.clone());
            return Ok(v);
        }
    }
    if !matches.is_empty() {
        let ids: Vec<&str> = matches.iter().map(|m| m.id.as_str()).collect();
        return Ok(Verdict::new(
            Outcome::False,
            format!(
                "pi is not a Weil generator of the matching field(s) {}",
                ids.join(", ")
            ),
        ));
    }
    if catalog.is_complete_for(degree) {
        return Ok(Verdict::new(
            Outcome::False,
            format!(
                "no class-number-one field of degree {degree} has disc_F = {disc_f}, disc(Z[pi, conj pi]) = {disc_k}"
            ),
        ));
    }
    Ok(Verdict::new(
        Outcome::UnknownField,
        format!("no catalog field with disc_F = {disc_f}, disc_K = {disc_k}"),
    ))
}
