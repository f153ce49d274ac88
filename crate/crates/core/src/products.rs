//! Products of CM fields: pair enumeration, cliques of compatible generators,
//! super-isolation of arbitrary Weil polynomials, and principal polarizations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactmath::{
    factor_over_integers, integer_roots, interpolate, is_prime_power, prime_power_split, resultant,
    BiPoly, IntPolynomial,
};
use crate::generators::{
    find_triple, generator_from_triple, is_super_isolated_simple, record_from_poly, Outcome,
    Verdict, WeilGeneratorRecord,
};
use crate::numfield::{CMFieldData, RealElement};
use crate::weilpoly::{
    is_ideal, is_ordinary, middle_coeff, norm_pi_minus_conj, ser_big, ser_poly, validate_weil,
};

/// Which unknown the pair solver eliminates first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EliminationOrder {
    /// Resultant in `q`, then integer roots in the trace shift.
    #[default]
    QFirst,
    /// Resultant in the trace shift, then integer roots in `q`.
    TraceFirst,
}

/// The polynomial system for one choice of T-set elements in a pair of fields.
#[derive(Clone, Debug)]
pub struct PairSolutionSystem {
    pub eta_pair: (usize, usize),
    /// `R(d) = prod (d + sigma(eta1) - tau(eta2))`, equal to the resultant of
    /// the two real Weil polynomials when `d = a1 - a2`.
    pub shift_resultant: IntPolynomial,
    /// Integer roots of `R - 1` and `R + 1`.
    pub d_candidates: Vec<BigInt>,
    /// For each `d`, the eliminant in `a1` (or in `q` for the other order).
    pub eliminants: Vec<(BigInt, IntPolynomial)>,
    /// Integer solutions `(a1, q)` of both norm equations, `q >= 2` a prime power.
    pub solutions: Vec<(BigInt, BigInt, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductRecord {
    pub members: Vec<WeilGeneratorRecord>,
    #[serde(serialize_with = "ser_big")]
    pub q: BigInt,
    #[serde(serialize_with = "ser_poly")]
    pub h_product: IntPolynomial,
    pub decomposition_type: Vec<usize>,
}

impl ProductRecord {
    /// Sorts the members and derives the product data. Members must share `q`.
    pub fn new(mut members: Vec<WeilGeneratorRecord>) -> Self {
        members.sort();
        let q = members.first().map(|m| m.q.clone()).unwrap_or_default();
        let h_product = members
            .iter()
            .fold(IntPolynomial::one(), |acc, m| &acc * &m.h);
        let mut decomposition_type: Vec<usize> = members.iter().map(|m| m.dimension()).collect();
        decomposition_type.sort_unstable();
        ProductRecord {
            members,
            q,
            h_product,
            decomposition_type,
        }
    }

    /// Type label such as `1x2`.
    pub fn type_label(&self) -> String {
        type_label(&self.decomposition_type)
    }

    /// Sorted member polynomials: the identity of the variety.
    pub fn key(&self) -> (BigInt, Vec<IntPolynomial>) {
        (
            self.q.clone(),
            self.members.iter().map(|m| m.h.clone()).collect(),
        )
    }
}

pub fn type_label(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

/// `|Res(g_i, g_j)|` for one pair of members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResultant {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_big")]
    pub abs_resultant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub ok: bool,
    pub common_q: bool,
    pub distinct: bool,
    pub resultants: Vec<PairResultant>,
    pub failures: Vec<String>,
}

/// Common norm, distinct minimal polynomials and unit pairwise resultants of
/// the real Weil polynomials.
pub fn check_product(members: &[WeilGeneratorRecord]) -> Result<ProductCheck> {
    let mut failures = Vec::new();
    let common_q = members.windows(2).all(|w| w[0].q == w[1].q);
    if !common_q {
        let qs: BTreeSet<String> = members.iter().map(|m| m.q.to_string()).collect();
        failures.push(format!(
            "norms differ ({}): not on the diagonal",
            qs.into_iter().collect::<Vec<_>>().join(", ")
        ));
    }
    let hs: BTreeSet<&IntPolynomial> = members.iter().map(|m| &m.h).collect();
    let distinct = hs.len() == members.len();
    if !distinct {
        failures.push("repeated minimal polynomial".into());
    }
    let mut resultants = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let r = resultant(&members[i].g_real, &members[j].g_real)?.abs();
            if !r.is_one() {
                failures.push(format!(
                    "|Res({}, {})| = {r}",
                    members[i].g_real, members[j].g_real
                ));
            }
            resultants.push(PairResultant {
                i,
                j,
                abs_resultant: r,
            });
        }
    }
    Ok(ProductCheck {
        ok: failures.is_empty(),
        common_q,
        distinct,
        resultants,
        failures,
    })
}

pub fn is_product_weil_generator(members: &[WeilGeneratorRecord]) -> bool {
    check_product(members)
        .map(|c| c.ok && c.distinct)
        .unwrap_or(false)
}

/// `Norm((eta + a + shift)^2 - 4q) - disc_K / disc_F^2` in the unknowns `(a, q)`.
fn norm_equation(k: &CMFieldData, eta_index: usize, shift: &BigInt) -> Result<BiPoly> {
    let f = &k.base;
    let ratio = BiPoly::constant(k.disc_ratio()?);
    let a = BiPoly::term(BigInt::one(), 1, 0).add(&BiPoly::constant(shift.clone()));
    let four_q = BiPoly::term(BigInt::from(4), 0, 1);
    let n = if f.degree() == 1 {
        a.mul(&a).sub(&four_q)
    } else {
        let (s, t) = f.eta_relation();
        let e = if eta_index == 0 { 1 } else { -1 };
        let z0 = a.mul(&a).sub(&BiPoly::constant(t.clone())).sub(&four_q);
        let z1 = a
            .scale(&BigInt::from(2 * e))
            .sub(&BiPoly::constant(s.clone()));
        z0.mul(&z0)
            .sub(&z0.mul(&z1).scale(s))
            .add(&z1.mul(&z1).scale(t))
    };
    Ok(n.sub(&ratio))
}

/// `R(d) = (-1)^(n1 n2) Res_y(m2(y), m1(y - d))`, by interpolation in `d`.
fn shift_resultant(m1: &IntPolynomial, m2: &IntPolynomial) -> Result<IntPolynomial> {
    let n = m1.deg() * m2.deg();
    let sign = if n % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let pts = (0..=n as i64)
        .map(|d| {
            let d = BigInt::from(d);
            let r = resultant(m2, &m1.shift(&-&d))?;
            Ok((d, &sign * r))
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate(&pts)
}

/// Builds and solves the system for T-set elements `(e1, e2)`.
pub fn solve_pair_system(
    k1: &CMFieldData,
    e1: usize,
    k2: &CMFieldData,
    e2: usize,
    order: EliminationOrder,
) -> Result<PairSolutionSystem> {
    let f1 = &k1.base;
    let f2 = &k2.base;
    let m1 = f1
        .min_poly(&f1.t_set()[e1])
        .expect("T-set elements are integral");
    let m2 = f2
        .min_poly(&f2.t_set()[e2])
        .expect("T-set elements are integral");
    let r = shift_resultant(&m1, &m2)?;
    let mut d_candidates: BTreeSet<BigInt> = BTreeSet::new();
    for pm in [1i64, -1] {
        let shifted = &r - &IntPolynomial::constant(BigInt::from(pm));
        d_candidates.extend(integer_roots(&shifted)?);
    }
    let p1 = norm_equation(k1, e1, &BigInt::zero())?;
    let n12 = f1.degree() * f2.degree();
    let mut eliminants = Vec::new();
    let mut solutions = BTreeSet::new();
    for d in &d_candidates {
        // the second field's trace shift is a1 - d
        let p2 = norm_equation(k2, e2, &-d)?;
        let (elim, used) = eliminate(&p1, &p2, n12, order)?;
        let mut cand: Vec<(BigInt, BigInt)> = Vec::new();
        match used {
            EliminationOrder::QFirst => {
                for a1 in integer_roots(&elim)? {
                    for q in integer_roots(&p1.at_first(&a1))? {
                        if p2.at_first(&a1).eval(&q).is_zero() {
                            cand.push((a1.clone(), q));
                        }
                    }
                }
            }
            EliminationOrder::TraceFirst => {
                for q in integer_roots(&elim)? {
                    for a1 in integer_roots(&p1.at_second(&q))? {
                        if p2.at_second(&q).eval(&a1).is_zero() {
                            cand.push((a1, q.clone()));
                        }
                    }
                }
            }
        }
        for (a1, q) in cand {
            if q >= BigInt::from(2) && is_prime_power(&q) {
                solutions.insert((a1.clone(), &a1 - d, q));
            }
        }
        eliminants.push((d.clone(), elim));
    }
    Ok(PairSolutionSystem {
        eta_pair: (e1, e2),
        shift_resultant: r,
        d_candidates: d_candidates.into_iter().collect(),
        eliminants,
        solutions: solutions.into_iter().collect(),
    })
}

/// Eliminates one unknown by interpolating the resultant; falls back to the
/// other order when the first eliminant vanishes identically.
fn eliminate(
    p1: &BiPoly,
    p2: &BiPoly,
    n12: usize,
    order: EliminationOrder,
) -> Result<(IntPolynomial, EliminationOrder)> {
    let npts = 4 * n12 as i64;
    let by_q = || -> Result<IntPolynomial> {
        // leading coefficients in q are constants, so specialization commutes
        let pts = (0..=npts)
            .map(|a| {
                let a = BigInt::from(a);
                Ok((a.clone(), resultant(&p1.at_first(&a), &p2.at_first(&a))?))
            })
            .collect::<Result<Vec<_>>>()?;
        interpolate(&pts)
    };
    let by_a = || -> Result<IntPolynomial> {
        let pts = (0..=npts)
            .map(|q| {
                let q = BigInt::from(q);
                Ok((q.clone(), resultant(&p1.at_second(&q), &p2.at_second(&q))?))
            })
            .collect::<Result<Vec<_>>>()?;
        interpolate(&pts)
    };
    let (first, second) = match order {
        EliminationOrder::QFirst => (EliminationOrder::QFirst, EliminationOrder::TraceFirst),
        EliminationOrder::TraceFirst => (EliminationOrder::TraceFirst, EliminationOrder::QFirst),
    };
    for o in [first, second] {
        let e = match o {
            EliminationOrder::QFirst => by_q()?,
            EliminationOrder::TraceFirst => by_a()?,
        };
        if !e.is_zero() {
            return Ok((e, o));
        }
    }
    Err(Error::Capability(
        "both eliminants vanish identically".into(),
    ))
}

/// All Weil generators of `K1 x K2`, one record per pair of minimal polynomials.
pub fn enumerate_pairs(k1: &CMFieldData, k2: &CMFieldData) -> Result<Vec<ProductRecord>> {
    enumerate_pairs_with(k1, k2, EliminationOrder::QFirst)
}

pub fn enumerate_pairs_with(
    k1: &CMFieldData,
    k2: &CMFieldData,
    order: EliminationOrder,
) -> Result<Vec<ProductRecord>> {
    k1.rel()?;
    k2.rel()?;
    let mut out: BTreeMap<(BigInt, Vec<IntPolynomial>), ProductRecord> = BTreeMap::new();
    for e1 in 0..k1.base.t_set().len() {
        for e2 in 0..k2.base.t_set().len() {
            let sys = solve_pair_system(k1, e1, k2, e2, order)?;
            for (a1, a2, q) in &sys.solutions {
                let (Some(r1), Some(r2)) = (member(k1, e1, a1, q)?, member(k2, e2, a2, q)?) else {
                    continue;
                };
                if r1.h == r2.h {
                    continue;
                }
                let members = vec![r1, r2];
                if !is_product_weil_generator(&members) {
                    return Err(Error::Consistency(format!(
                        "pair solver produced an invalid pair for {} x {}",
                        k1.id, k2.id
                    )));
                }
                let rec = ProductRecord::new(members);
                out.entry(rec.key()).or_insert(rec);
            }
        }
    }
    Ok(out.into_values().collect())
}

/// The generator of `K` with trace `eta + a` and norm `q`, if there is one.
fn member(
    k: &CMFieldData,
    e: usize,
    a: &BigInt,
    q: &BigInt,
) -> Result<Option<WeilGeneratorRecord>> {
    let f = &k.base;
    let beta = f.t_set()[e].add(&RealElement::integer(a.clone()));
    let w = f.div(
        &RealElement::integer(q * 4).sub(&f.square(&beta)),
        &k.norm_gamma_diff()?,
    )?;
    let Some(u) = f.unit_square_root(&w) else {
        return Ok(None);
    };
    Ok(generator_from_triple(k, &u, e, a).ok())
}

/// Bron-Kerbosch with pivoting; returns the maximal cliques as sorted vertex lists.
pub fn bron_kerbosch(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .union(&x)
            .max_by_key(|u| adj[**u].intersection(&p).count())
            .copied()
            .expect("p or x is nonempty");
        let cand: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        for v in cand {
            r.push(v);
            rec(
                adj,
                r,
                p.intersection(&adj[v]).copied().collect(),
                x.intersection(&adj[v]).copied().collect(),
                out,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    let all: BTreeSet<usize> = (0..adj.len()).collect();
    rec(adj, &mut Vec::new(), all, BTreeSet::new(), &mut out);
    out.sort();
    out
}

/// Every product of 2 to `max_factors` generators whose members are pairwise
/// joined by an edge of `pairs`, re-verified member-wise.
pub fn clique_products(pairs: &[ProductRecord], max_factors: usize) -> Result<Vec<ProductRecord>> {
    let mut index: BTreeMap<(BigInt, IntPolynomial), usize> = BTreeMap::new();
    let mut verts: Vec<WeilGeneratorRecord> = Vec::new();
    let mut edges = BTreeSet::new();
    for p in pairs {
        let mut ids = Vec::new();
        for m in &p.members {
            let key = (m.q.clone(), m.h.clone());
            let id = *index.entry(key).or_insert_with(|| {
                verts.push(m.clone());
                verts.len() - 1
            });
            ids.push(id);
        }
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                edges.insert((ids[i].min(ids[j]), ids[i].max(ids[j])));
            }
        }
    }
    // relabel in (q, h) order so the search is deterministic
    let order: Vec<usize> = index.values().copied().collect();
    let mut pos = vec![0; verts.len()];
    for (new, old) in order.iter().enumerate() {
        pos[*old] = new;
    }
    let verts: Vec<WeilGeneratorRecord> = order.iter().map(|&o| verts[o].clone()).collect();
    let mut adj = vec![BTreeSet::new(); verts.len()];
    for (a, b) in edges {
        if a != b {
            adj[pos[a]].insert(pos[b]);
            adj[pos[b]].insert(pos[a]);
        }
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in bron_kerbosch(&adj) {
        for size in 2..=max_factors.min(c.len()) {
            for sub in combinations(&c, size) {
                seen.insert(sub);
            }
        }
    }
    let mut out = Vec::new();
    for s in seen {
        let members: Vec<WeilGeneratorRecord> = s.iter().map(|&i| verts[i].clone()).collect();
        if !is_product_weil_generator(&members) {
            return Err(Error::Consistency(
                "clique search returned an incompatible set".into(),
            ));
        }
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if !adj[s[i]].contains(&s[j]) {
                    return Err(Error::Consistency("clique misses an edge".into()));
                }
            }
        }
        out.push(ProductRecord::new(members));
    }
    out.sort_by_key(|a| a.key());
    Ok(out)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

/// Super-isolation of one irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorVerdict {
    #[serde(serialize_with = "ser_poly")]
    pub factor: IntPolynomial,
    pub multiplicity: u32,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperIsolationReport {
    pub verdict: Verdict,
    /// `n` when `h` is the `n`-th power of its radical, `n > 1`.
    pub power: Option<u32>,
    pub factors: Vec<FactorVerdict>,
    pub product_check: Option<ProductCheck>,
}

/// Super-isolation of the isogeny class with Weil polynomial `h`.
pub fn is_super_isolated(
    h: &IntPolynomial,
    q: &BigInt,
    catalog: &Catalog,
) -> Result<SuperIsolationReport> {
    if *q < BigInt::from(2) || prime_power_split(q)?.is_none() {
        return Err(Error::Domain(format!("q = {q} is not a prime power")));
    }
    let na = |why: String| SuperIsolationReport {
        verdict: Verdict::new(Outcome::Inapplicable, why),
        power: None,
        factors: Vec::new(),
        product_check: None,
    };
    let w = validate_weil(h, q);
    if !w.is_weil {
        return Ok(na(w
            .reason
            .unwrap_or_else(|| "not a Weil polynomial".into())));
    }
    let fac = factor_over_integers(h)?;
    let mults: BTreeSet<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
    if mults.len() > 1 {
        return Ok(na("mixed multiplicities: no statement applies".into()));
    }
    let n = *mults.iter().next().expect("h has a factor");
    if n > 1 {
        let radical = fac
            .factors
            .iter()
            .fold(IntPolynomial::one(), |acc, (f, _)| &acc * f);
        if fac.factors.iter().any(|(f, _)| f.deg() % 2 == 1) {
            return Ok(na("power of a polynomial with a real root +-sqrt(q)".into()));
        }
        let ideal = is_ideal(&radical, q)?;
        if !ideal.is_ideal {
            return Ok(na(format!(
                "power of a non-ideal polynomial ({})",
                ideal.reasons.join("; ")
            )));
        }
        let mut base = is_super_isolated(&radical, q, catalog)?;
        base.verdict.reason = format!(
            "power {} of {radical}; A^n is super-isolated iff A is: {}",
            n, base.verdict.reason
        );
        base.power = Some(n);
        for f in &mut base.factors {
            f.multiplicity = n;
        }
        return Ok(base);
    }
    let ideal = is_ideal(h, q)?;
    if !ideal.is_ideal {
        return Ok(na(format!("not ideal: {}", ideal.reasons.join("; "))));
    }
    let mut factors = Vec::new();
    let mut members = Vec::new();
    for (f, m) in &fac.factors {
        let v = is_super_isolated_simple(f, q, catalog)?;
        let id = v.field_id.clone().unwrap_or_else(|| "unknown".into());
        let mut rec = record_from_poly(&id, f, q)?;
        if let Some(k) = v.field_id.as_ref().and_then(|i| catalog.get(i)) {
            rec.triple = find_triple(k, f, q);
        }
        members.push(rec);
        factors.push(FactorVerdict {
            factor: f.clone(),
            multiplicity: *m,
            verdict: v,
        });
    }
    let check = if members.len() > 1 {
        Some(check_product(&members)?)
    } else {
        None
    };
    let verdict = if let Some(f) = factors.iter().find(|f| f.verdict.outcome == Outcome::False) {
        Verdict::new(
            Outcome::False,
            format!(
                "factor {} is not super-isolated: {}",
                f.factor, f.verdict.reason
            ),
        )
    } else if let Some(c) = check.as_ref().filter(|c| !c.ok) {
        Verdict::new(
            Outcome::False,
            format!(
                "not a Weil generator of the product: {}",
                c.failures.join("; ")
            ),
        )
    } else if let Some(f) = factors
        .iter()
        .find(|f| f.verdict.outcome == Outcome::UnknownField)
    {
        Verdict::new(
            Outcome::UnknownField,
            format!("factor {}: {}", f.factor, f.verdict.reason),
        )
    } else if members.len() == 1 {
        factors[0].verdict.clone()
    } else {
        Verdict::new(
            Outcome::True,
            "every factor is a Weil generator and all pairwise resultants are units",
        )
    };
    Ok(SuperIsolationReport {
        verdict,
        power: None,
        factors,
        product_check: check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizationVerdict {
    pub applicable: bool,
    pub exists: bool,
    /// Principal polarizations up to isomorphism, when known.
    pub count: Option<u64>,
    pub reason: String,
}

impl PolarizationVerdict {
    fn inapplicable(reason: impl Into<String>) -> Self {
        PolarizationVerdict {
            applicable: false,
            exists: false,
            count: None,
            reason: reason.into(),
        }
    }
}

/// Principal polarization test for a simple ordinary super-isolated variety.
/// `super_isolated = None` means the caller could not decide it; the test is
/// then run under that assumption and the reason says so.
pub fn pp_exists_simple(
    h: &IntPolynomial,
    q: &BigInt,
    super_isolated: Option<bool>,
) -> Result<PolarizationVerdict> {
    if super_isolated == Some(false) {
        return Ok(PolarizationVerdict::inapplicable("not super-isolated"));
    }
    if !factor_over_integers(h)?.is_irreducible() {
        return Ok(PolarizationVerdict::inapplicable(format!(
            "{h} is reducible"
        )));
    }
    if !is_ordinary(h, q)? {
        return Ok(PolarizationVerdict::inapplicable("not ordinary"));
    }
    let norm = norm_pi_minus_conj(h, q)?;
    let ag = middle_coeff(h);
    let m = if *q == BigInt::from(2) {
        BigInt::from(4)
    } else {
        q.clone()
    };
    let minus_one = num_integer::Integer::mod_floor(&(&ag + 1), &m).is_zero();
    let exists = !(norm.is_one() && minus_one);
    let mut reason = format!(
        "Norm(pi - conj pi) = {norm}, a_g = {ag} = {} mod {m}",
        num_integer::Integer::mod_floor(&ag, &m)
    );
    if super_isolated.is_none() {
        reason.push_str("; super-isolation assumed");
    }
    Ok(PolarizationVerdict {
        applicable: true,
        exists,
        count: Some(exists as u64),
        reason,
    })
}

/// Principal polarizations on the variety with Weil polynomial `h`.
pub fn pp_verdict(h: &IntPolynomial, q: &BigInt, catalog: &Catalog) -> Result<PolarizationVerdict> {
    let si = is_super_isolated(h, q, catalog)?;
    pp_from_report(q, &si)
}

/// As [`pp_verdict`], reusing a super-isolation report for `h`.
pub fn pp_from_report(q: &BigInt, si: &SuperIsolationReport) -> Result<PolarizationVerdict> {
    let assumed = match si.verdict.outcome {
        Outcome::True => Some(true),
        Outcome::UnknownField => None,
        Outcome::False => return Ok(PolarizationVerdict::inapplicable("not super-isolated")),
        Outcome::Inapplicable => {
            return Ok(PolarizationVerdict::inapplicable(format!(
                "super-isolation inapplicable: {}",
                si.verdict.reason
            )))
        }
    };
    let mut exists = true;
    let mut reasons = Vec::new();
    for f in &si.factors {
        let v = pp_exists_simple(&f.factor, q, assumed)?;
        if !v.applicable {
            return Ok(PolarizationVerdict::inapplicable(format!(
                "factor {}: {}",
                f.factor, v.reason
            )));
        }
        exists &= v.exists;
        reasons.push(format!("{}: {}", f.factor, v.reason));
    }
    let reason = reasons.join("; ");
    match si.power {
        None => Ok(PolarizationVerdict {
            applicable: true,
            exists,
            count: Some(exists as u64),
            reason,
        }),
        Some(n) if exists => Ok(PolarizationVerdict {
            applicable: true,
            exists: true,
            count: None,
            reason: format!("the base admits one, so A^{n} does (not unique in general); {reason}"),
        }),
        Some(n) if n % 8 == 0 => Ok(PolarizationVerdict {
            applicable: true,
            exists: true,
            count: None,
            reason: format!("A^8 is principally polarized, hence so is A^{n}; {reason}"),
        }),
        Some(n) => Ok(PolarizationVerdict::inapplicable(format!(
            "undetermined: the base has no principal polarization and {n} is not a multiple of 8"
        ))),
    }
}

/// Counts of super-isolated products per `q` and decomposition type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub rows: Vec<TableRow>,
    pub total: u64,
    /// Set unless the catalog holds complete degree-2 and degree-4 lists.
    pub partial: bool,
    /// Types found beyond the five standard columns.
    pub extra_types: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(serialize_with = "ser_big")]
    pub q: BigInt,
    pub counts: BTreeMap<String, u64>,
}

pub const TABLE_COLUMNS: [&str; 5] = ["1x1", "1x2", "1x1x2", "1x2x2", "2x2"];

impl Table1 {
    pub fn count(&self, q: u64, ty: &str) -> u64 {
        self.rows
            .iter()
            .find(|r| r.q == BigInt::from(q))
            .and_then(|r| r.counts.get(ty).copied())
            .unwrap_or(0)
    }

    pub fn column_total(&self, ty: &str) -> u64 {
        self.rows.iter().filter_map(|r| r.counts.get(ty)).sum()
    }

    fn columns(&self) -> Vec<String> {
        TABLE_COLUMNS
            .iter()
            .map(|s| s.to_string())
            .chain(self.extra_types.iter().cloned())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let cols = self.columns();
        let mut s = String::from("q");
        for c in &cols {
            s.push_str(&format!(",type_{c}"));
        }
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.q.to_string());
            for c in &cols {
                match r.counts.get(c) {
                    Some(n) => s.push_str(&format!(",{n}")),
                    None => s.push(','),
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let cols = self.columns();
        let mut s = format!("{:>7}", "q");
        for c in &cols {
            s.push_str(&format!(" {c:>6}"));
        }
        s.push('\n');
        for r in &self.rows {
            s.push_str(&format!("{:>7}", r.q.to_string()));
            for c in &cols {
                let cell = r
                    .counts
                    .get(c)
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "-".into());
                s.push_str(&format!(" {cell:>6}"));
            }
            s.push('\n');
        }
        s.push_str(&format!(
            "total {}{}\n",
            self.total,
            if self.partial { " (partial)" } else { "" }
        ));
        s
    }
}

/// All ideal super-isolated products of generators from the catalog's
/// class-number-one fields (pairs of fields, then cliques).
pub fn table1(catalog: &Catalog) -> Result<Table1> {
    let (table, _) = table1_with_products(catalog)?;
    Ok(table)
}

/// [`table1`] together with the counted products.
pub fn table1_with_products(catalog: &Catalog) -> Result<(Table1, Vec<ProductRecord>)> {
    let fields: Vec<&CMFieldData> = catalog.class_number_one_fields().collect();
    let mut work = Vec::new();
    for i in 0..fields.len() {
        for j in i..fields.len() {
            work.push((i, j));
        }
    }
    let pair_lists = work
        .par_iter()
        .map(|&(i, j)| enumerate_pairs(fields[i], fields[j]))
        .collect::<Result<Vec<_>>>()?;
    let mut ideal_cache: BTreeMap<(BigInt, IntPolynomial), bool> = BTreeMap::new();
    let mut pairs = Vec::new();
    for p in pair_lists.into_iter().flatten() {
        let mut ok = true;
        for m in &p.members {
            let key = (m.q.clone(), m.h.clone());
            let ideal = match ideal_cache.get(&key) {
                Some(v) => *v,
                None => {
                    let v = is_ideal(&m.h, &m.q)?.is_ideal;
                    ideal_cache.insert(key, v);
                    v
                }
            };
            ok &= ideal;
        }
        if ok {
            pairs.push(p);
        }
    }
    let max_factors = 2 * catalog.fields.iter().map(|f| f.degree()).max().unwrap_or(2);
    let products = clique_products(&pairs, max_factors)?;
    let mut grid: BTreeMap<BigInt, BTreeMap<String, u64>> = BTreeMap::new();
    let mut extra = BTreeSet::new();
    for p in &products {
        let label = p.type_label();
        if !TABLE_COLUMNS.contains(&label.as_str()) {
            extra.insert(label.clone());
        }
        *grid
            .entry(p.q.clone())
            .or_default()
            .entry(label)
            .or_default() += 1;
    }
    let rows: Vec<TableRow> = grid
        .into_iter()
        .map(|(q, counts)| TableRow { q, counts })
        .collect();
    let total = rows.iter().flat_map(|r| r.counts.values()).sum();
    let partial = !(catalog.is_complete_for(2) && catalog.is_complete_for(4));
    Ok((
        Table1 {
            rows,
            total,
            partial,
            extra_types: extra.into_iter().collect(),
        },
        products,
    ))
}
