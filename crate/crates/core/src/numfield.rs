//! Totally real fields of degree one or two with `O_F = Z[eta]`, and CM fields
//! presented as `K = F(gamma)` with `gamma^2 + b*gamma + c = 0`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{discriminant, factor_over_integers, sign_of_surd, IntPolynomial};

/// `c0 + c1*eta` with rational coordinates; `c1 = 0` in degree one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealElement {
    pub c0: BigRational,
    pub c1: BigRational,
}

impl RealElement {
    pub fn new(c0: BigRational, c1: BigRational) -> Self {
        RealElement { c0, c1 }
    }

    pub fn from_ints(c0: impl Into<BigInt>, c1: impl Into<BigInt>) -> Self {
        RealElement {
            c0: BigRational::from_integer(c0.into()),
            c1: BigRational::from_integer(c1.into()),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.c0.is_integer() && self.c1.is_integer()
    }

    /// The rational value when `c1 = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c1.is_zero().then_some(&self.c0)
    }

    /// Integer coordinates, if integral.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        self.is_integral()
            .then(|| (self.c0.to_integer(), self.c1.to_integer()))
    }

    pub fn add(&self, o: &Self) -> Self {
        RealElement::new(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        RealElement::new(&self.c0 - &o.c0, &self.c1 - &o.c1)
    }

    pub fn neg(&self) -> Self {
        RealElement::new(-&self.c0, -&self.c1)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RealElement::new(&self.c0 * k, &self.c1 * k)
    }
}

impl fmt::Display for RealElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else if self.c1.is_negative() {
            write!(f, "{} - {}*eta", self.c0, -&self.c1)
        } else {
            write!(f, "{} + {}*eta", self.c0, self.c1)
        }
    }
}

impl fmt::Debug for RealElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A totally real field `F = Q(eta)` of degree one (`eta = 0`) or two, with
/// `O_F = Z[eta]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotallyRealField {
    degree: usize,
    eta_min_poly: IntPolynomial,
    // eta^2 + s*eta + t = 0 (both zero in degree one)
    s: BigInt,
    t: BigInt,
    disc: BigInt,
    unit: Option<RealElement>,
    t_set: Vec<RealElement>,
}

impl TotallyRealField {
    /// `Q` itself, with `eta = 0`.
    pub fn rationals() -> Self {
        TotallyRealField {
            degree: 1,
            eta_min_poly: IntPolynomial::x(),
            s: BigInt::zero(),
            t: BigInt::zero(),
            disc: BigInt::one(),
            unit: None,
            t_set: vec![RealElement::zero()],
        }
    }

    /// Builds the field from the minimal polynomial of `eta` (`x` for `Q`).
    pub fn from_eta_poly(f: &IntPolynomial) -> Result<Self> {
        if *f == IntPolynomial::x() {
            return Ok(Self::rationals());
        }
        if f.deg() != 2 || !f.is_monic() {
            return Err(Error::Capability(format!(
                "totally real fields are limited to degree 2 with monic eta polynomial, got {f}"
            )));
        }
        let s = f.coeff(1);
        let t = f.coeff(0);
        let disc = &s * &s - BigInt::from(4) * &t;
        if !disc.is_positive() {
            return Err(Error::Domain(format!("{f} does not have real roots")));
        }
        let r = disc.sqrt();
        if &r * &r == disc {
            return Err(Error::Domain(format!("{f} is reducible")));
        }
        if !is_fundamental_discriminant(&disc) {
            return Err(Error::Domain(format!(
                "Z[eta] is not maximal for {f}: discriminant {disc} is not fundamental"
            )));
        }
        let mut field = TotallyRealField {
            degree: 2,
            eta_min_poly: f.clone(),
            s,
            t,
            disc,
            unit: None,
            t_set: Vec::new(),
        };
        let eta = RealElement::from_ints(0, 1);
        field.t_set = vec![eta.clone(), eta.neg()];
        field.unit = Some(field.compute_fundamental_unit());
        Ok(field)
    }

    /// The real quadratic field of fundamental discriminant `d`, with
    /// `eta = (1 + sqrt d)/2` or `sqrt(d/4)`.
    pub fn real_quadratic(d: &BigInt) -> Result<Self> {
        if !d.is_positive() || !is_fundamental_discriminant(d) {
            return Err(Error::Domain(format!(
                "{d} is not a positive fundamental discriminant"
            )));
        }
        let four = BigInt::from(4);
        let f = if d.mod_floor(&four).is_one() {
            IntPolynomial::new(vec![
                -(d - BigInt::one()) / &four,
                BigInt::from(-1),
                BigInt::one(),
            ])
        } else {
            IntPolynomial::new(vec![-(d / &four), BigInt::zero(), BigInt::one()])
        };
        Self::from_eta_poly(&f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eta_min_poly(&self) -> &IntPolynomial {
        &self.eta_min_poly
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `(s, t)` with `eta^2 + s*eta + t = 0`.
    pub fn eta_relation(&self) -> (&BigInt, &BigInt) {
        (&self.s, &self.t)
    }

    pub fn t_set(&self) -> &[RealElement] {
        &self.t_set
    }

    pub fn unit(&self) -> Option<&RealElement> {
        self.unit.as_ref()
    }

    /// The fundamental unit, normalized `> 1` under the principal embedding.
    pub fn fundamental_unit(&self) -> Result<RealElement> {
        self.unit.clone().ok_or_else(|| {
            Error::Domain("the rationals have no fundamental unit (units are +-1)".into())
        })
    }

    pub fn element(&self, c0: impl Into<BigInt>, c1: impl Into<BigInt>) -> RealElement {
        let e = RealElement::from_ints(c0, c1);
        debug_assert!(self.degree == 2 || e.c1.is_zero());
        e
    }

    pub fn mul(&self, x: &RealElement, y: &RealElement) -> RealElement {
        let s = BigRational::from_integer(self.s.clone());
        let t = BigRational::from_integer(self.t.clone());
        let x1y1 = &x.c1 * &y.c1;
        RealElement::new(
            &x.c0 * &y.c0 - &t * &x1y1,
            &x.c0 * &y.c1 + &x.c1 * &y.c0 - &s * &x1y1,
        )
    }

    pub fn square(&self, x: &RealElement) -> RealElement {
        self.mul(x, x)
    }

    pub fn pow(&self, x: &RealElement, e: i64) -> Result<RealElement> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = RealElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// The nontrivial automorphism (identity in degree one).
    pub fn conj(&self, x: &RealElement) -> RealElement {
        if self.degree == 1 {
            return x.clone();
        }
        let s = BigRational::from_integer(self.s.clone());
        RealElement::new(&x.c0 - &s * &x.c1, -&x.c1)
    }

    pub fn norm(&self, x: &RealElement) -> BigRational {
        if self.degree == 1 {
            return x.c0.clone();
        }
        let p = self.mul(x, &self.conj(x));
        debug_assert!(p.c1.is_zero());
        p.c0
    }

    pub fn trace(&self, x: &RealElement) -> BigRational {
        if self.degree == 1 {
            return x.c0.clone();
        }
        let p = x.add(&self.conj(x));
        p.c0
    }

    pub fn inv(&self, x: &RealElement) -> Result<RealElement> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(Error::Domain("division by zero in F".into()));
        }
        if self.degree == 1 {
            return Ok(RealElement::new(x.c0.recip(), BigRational::zero()));
        }
        Ok(self.conj(x).scale(&n.recip()))
    }

    pub fn div(&self, x: &RealElement, y: &RealElement) -> Result<RealElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn is_unit(&self, x: &RealElement) -> bool {
        x.is_integral() && self.norm(x).abs().is_one()
    }

    /// Minimal polynomial over `Q` of an integral element (degree `deg F`,
    /// or lower when the element is rational).
    pub fn min_poly(&self, x: &RealElement) -> Option<IntPolynomial> {
        if !x.is_integral() {
            return None;
        }
        if x.c1.is_zero() {
            return Some(IntPolynomial::linear_root(&x.c0.to_integer()));
        }
        let tr = self.trace(x).to_integer();
        let n = self.norm(x).to_integer();
        Some(IntPolynomial::new(vec![n, -tr, BigInt::one()]))
    }

    /// The characteristic polynomial of multiplication by an integral element
    /// (always of degree `deg F`).
    pub fn char_poly(&self, x: &RealElement) -> Option<IntPolynomial> {
        if !x.is_integral() {
            return None;
        }
        if self.degree == 1 {
            return Some(IntPolynomial::linear_root(&x.c0.to_integer()));
        }
        let tr = self.trace(x).to_integer();
        let n = self.norm(x).to_integer();
        Some(IntPolynomial::new(vec![n, -tr, BigInt::one()]))
    }

    /// Sign of `x` under the embedding sending `eta` to its larger real root
    /// (`principal = true`) or to the smaller one.
    pub fn sign_at(&self, x: &RealElement, principal: bool) -> Ordering {
        if self.degree == 1 {
            return x.c0.cmp(&BigRational::zero());
        }
        // eta = (-s +- sqrt(disc))/2, so 2*den*(c0 + c1 eta) = A + B sqrt(disc)
        let den = x.c0.denom().lcm(x.c1.denom());
        let c0 = (&x.c0 * BigRational::from_integer(den.clone())).to_integer();
        let c1 = (&x.c1 * BigRational::from_integer(den)).to_integer();
        let a = BigInt::from(2) * &c0 - &c1 * &self.s;
        let b = if principal { c1 } else { -c1 };
        sign_of_surd(&a, &b, &self.disc)
    }

    pub fn is_totally_positive(&self, x: &RealElement) -> bool {
        self.sign_at(x, true) == Ordering::Greater
            && (self.degree == 1 || self.sign_at(x, false) == Ordering::Greater)
    }

    pub fn is_totally_negative(&self, x: &RealElement) -> bool {
        self.is_totally_positive(&x.neg())
    }

    /// Compares two elements under the principal embedding.
    pub fn cmp_principal(&self, x: &RealElement, y: &RealElement) -> Ordering {
        self.sign_at(&x.sub(y), true)
    }

    /// `v` with `v^2 = x` and `v` a unit, positive under the principal
    /// embedding; `None` if `x` is not the square of a unit.
    pub fn unit_square_root(&self, x: &RealElement) -> Option<RealElement> {
        if !self.is_unit(x) || !self.is_totally_positive(x) {
            return None;
        }
        if self.degree == 1 {
            return x.c0.is_one().then(RealElement::one);
        }
        let eps = self.unit.as_ref().expect("degree-2 field has a unit");
        let eps_inv = self.inv(eps).ok()?;
        let one = RealElement::one();
        let mut y = x.clone();
        let mut m: i64 = 0;
        while self.cmp_principal(&y, eps) != Ordering::Less {
            y = self.mul(&y, &eps_inv);
            m += 1;
        }
        while self.cmp_principal(&y, &one) == Ordering::Less {
            y = self.mul(&y, eps);
            m -= 1;
        }
        // now 1 <= y < eps, so y = 1 for a unit
        if y != one || m % 2 != 0 {
            return None;
        }
        self.pow(eps, m / 2).ok()
    }

    fn compute_fundamental_unit(&self) -> RealElement {
        // continued fraction of eta = (P + sqrt D)/Q with P = -s, Q = 2
        let d = &self.disc;
        let sqrt_floor = d.sqrt();
        let mut p = -self.s.clone();
        let mut q = BigInt::from(2);
        // convergents h/k of eta
        let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
        let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
        loop {
            // floor((P + sqrt D)/Q), computed exactly
            let a = floor_surd_quotient(&p, &sqrt_floor, &q);
            let h_next = &a * &h + &h_prev;
            let k_next = &a * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            let cand = self.element(h.clone(), -k.clone());
            if self.norm(&cand).abs().is_one() {
                return self.normalize_unit(&cand);
            }
            p = &a * &q - &p;
            q = (d - &p * &p) / &q;
        }
    }

    /// The representative of `{+-u, +-1/u}` that is `> 1` principally.
    fn normalize_unit(&self, u: &RealElement) -> RealElement {
        let inv = self.inv(u).expect("unit");
        let one = RealElement::one();
        [u.clone(), u.neg(), inv.clone(), inv.neg()]
            .into_iter()
            .find(|v| self.cmp_principal(v, &one) == Ordering::Greater)
            .expect("one of the four associates exceeds 1")
    }
}

/// `floor((p + sqrt d)/q)` for `q != 0` and non-square `d`, given
/// `r = floor(sqrt d)`.
fn floor_surd_quotient(p: &BigInt, r: &BigInt, q: &BigInt) -> BigInt {
    // x = p + sqrt d is irrational with floor(x) = p + r
    let lo = p + r;
    if q.is_positive() {
        lo.div_floor(q)
    } else {
        -lo.div_floor(&-q) - BigInt::one()
    }
}

pub fn is_squarefree(n: &BigInt) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let pp = &p * &p;
        if n.is_multiple_of(&pp) {
            return false;
        }
        if n.is_multiple_of(&p) {
            n /= &p;
        }
        p += 1;
    }
    true
}

pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    let four = BigInt::from(4);
    let r = d.mod_floor(&four);
    if d.is_one() {
        return false;
    }
    if r.is_one() {
        return is_squarefree(d);
    }
    if r.is_zero() {
        let m = d / &four;
        let m4 = m.mod_floor(&four);
        return (m4 == BigInt::from(2) || m4 == BigInt::from(3)) && is_squarefree(&m);
    }
    false
}

/// `x + y*gamma` in a CM field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMElement {
    pub x: RealElement,
    pub y: RealElement,
}

impl CMElement {
    pub fn new(x: RealElement, y: RealElement) -> Self {
        CMElement { x, y }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integral() && self.y.is_integral()
    }
}

/// The data `gamma^2 + b*gamma + c = 0` of a relative generator with
/// `O_K = O_F[gamma]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeGenerator {
    pub b: RealElement,
    pub c: RealElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMFieldData {
    pub id: String,
    pub base: TotallyRealField,
    /// `None` for a field recorded as having no relative generator; such a
    /// field has no Weil generators.
    pub rel: Option<RelativeGenerator>,
    pub disc_k: BigInt,
    pub class_number_one: bool,
    pub source: String,
}

impl CMFieldData {
    pub fn degree(&self) -> usize {
        2 * self.base.degree()
    }

    pub fn rel(&self) -> Result<&RelativeGenerator> {
        self.rel.as_ref().ok_or_else(|| {
            Error::Capability(format!("field {} has no relative generator", self.id))
        })
    }

    /// `Norm_{K/F}(gamma - conj gamma) = 4c - b^2`.
    pub fn norm_gamma_diff(&self) -> Result<RealElement> {
        let r = self.rel()?;
        let b2 = self.base.square(&r.b);
        Ok(r.c.scale(&BigRational::from_integer(4.into())).sub(&b2))
    }

    /// `disc_K / disc_F^2`, which must be an integer.
    pub fn disc_ratio(&self) -> Result<BigInt> {
        let d2 = self.base.disc() * self.base.disc();
        let (q, r) = self.disc_k.div_rem(&d2);
        if !r.is_zero() || q.is_zero() {
            return Err(Error::Data(format!(
                "field {}: disc_K / disc_F^2 = {}/{} is not a nonzero integer",
                self.id, self.disc_k, d2
            )));
        }
        Ok(q)
    }

    pub fn conjugate(&self, z: &CMElement) -> Result<CMElement> {
        let r = self.rel()?;
        Ok(CMElement::new(
            z.x.sub(&self.base.mul(&z.y, &r.b)),
            z.y.neg(),
        ))
    }

    pub fn mul(&self, z: &CMElement, w: &CMElement) -> Result<CMElement> {
        let r = self.rel()?;
        let f = &self.base;
        let yy = f.mul(&z.y, &w.y);
        Ok(CMElement::new(
            f.mul(&z.x, &w.x).sub(&f.mul(&r.c, &yy)),
            f.mul(&z.x, &w.y)
                .add(&f.mul(&z.y, &w.x))
                .sub(&f.mul(&r.b, &yy)),
        ))
    }

    pub fn add(&self, z: &CMElement, w: &CMElement) -> CMElement {
        CMElement::new(z.x.add(&w.x), z.y.add(&w.y))
    }

    /// `z * conj(z) = x^2 - b x y + c y^2`, an element of `F`.
    pub fn norm_to_f(&self, z: &CMElement) -> Result<RealElement> {
        let p = self.mul(z, &self.conjugate(z)?)?;
        debug_assert!(p.y.is_zero());
        Ok(p.x)
    }

    pub fn norm_to_q(&self, z: &CMElement) -> Result<BigRational> {
        Ok(self.base.norm(&self.norm_to_f(z)?))
    }

    pub fn trace_to_f(&self, z: &CMElement) -> Result<RealElement> {
        Ok(self.add(z, &self.conjugate(z)?).x)
    }
}

/// Checks every structural invariant of the field data; empty when valid.
pub fn validate_field_data(k: &CMFieldData) -> Vec<String> {
    let mut v = Vec::new();
    let f = &k.base;
    let m = f.eta_min_poly();
    if f.degree() == 2 {
        match factor_over_integers(m) {
            Ok(fac) if fac.is_irreducible() => {}
            _ => v.push(format!("eta polynomial {m} is not irreducible")),
        }
        match discriminant(m) {
            Ok(d) if &d == f.disc() => {}
            Ok(d) => v.push(format!(
                "disc({m}) = {d} differs from disc_F = {}",
                f.disc()
            )),
            Err(e) => v.push(e.to_string()),
        }
        if !f.disc().is_positive() {
            v.push(format!("eta polynomial {m} is not totally real"));
        }
        if let Some(u) = f.unit() {
            if !f.is_unit(u) {
                v.push(format!("fundamental unit {u} is not a unit"));
            }
            if f.cmp_principal(u, &RealElement::one()) != Ordering::Greater {
                v.push(format!("fundamental unit {u} is not > 1"));
            }
        } else {
            v.push("missing fundamental unit".into());
        }
        if f.t_set().len() != 2 {
            v.push("T-set must be {eta, -eta}".into());
        }
        for e in f.t_set() {
            match f.min_poly(e).map(|p| discriminant(&p)) {
                Some(Ok(d)) if &d == f.disc() => {}
                _ => v.push(format!("T-set element {e} does not generate O_F")),
            }
        }
    } else if f.t_set() != [RealElement::zero()] {
        v.push("degree-1 T-set must be {0}".into());
    }
    let Some(r) = &k.rel else {
        return v;
    };
    if !r.b.is_integral() || !r.c.is_integral() {
        v.push(format!("b = {} or c = {} is not in O_F", r.b, r.c));
        return v;
    }
    let delta = f
        .square(&r.b)
        .sub(&r.c.scale(&BigRational::from_integer(4.into())));
    if !f.is_totally_negative(&delta) {
        v.push(format!(
            "b^2 - 4c = {delta} is not totally negative: K is not CM"
        ));
    }
    let lhs = BigRational::from_integer(f.disc() * f.disc()) * f.norm(&delta);
    if lhs != BigRational::from_integer(k.disc_k.clone()) {
        v.push(format!(
            "disc_F^2 * Norm(b^2 - 4c) = {lhs} but disc_K = {}",
            k.disc_k
        ));
    }
    if let Ok(ngd) = k.norm_gamma_diff() {
        if !f.is_totally_positive(&ngd) {
            v.push(format!("4c - b^2 = {ngd} is not totally positive"));
        }
    }
    v
}
