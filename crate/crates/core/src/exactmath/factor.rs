//! Factorization in `Z[x]`: Berlekamp modulo a small prime, linear Hensel
//! lifting, and exhaustive subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Largest degree accepted by [`factor_over_integers`].
pub const MAX_FACTOR_DEGREE: usize = 24;

/// How many usable primes are tried before picking the one with the fewest
/// modular factors.
const PRIMES_TO_TRY: usize = 6;

/// `f = content * prod factor^multiplicity` with primitive irreducible factors
/// of positive leading coefficient, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.content.abs().is_one()
    }
}

pub fn factor_over_integers(f: &IntPolynomial) -> Result<Factorization> {
    let Some(deg) = f.degree() else {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    };
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::Capability(format!(
            "degree {deg} exceeds the factorization bound {MAX_FACTOR_DEGREE}"
        )));
    }
    let mut content = f.content();
    if f.leading().is_negative() {
        content = -content;
    }
    if deg == 0 {
        return Ok(Factorization {
            content,
            factors: Vec::new(),
        });
    }
    let prim = f.primitive_part();
    let radical = prim.squarefree_part();
    let mut irreducibles = factor_squarefree(&radical);
    irreducibles.sort();
    let mut rest = prim;
    let mut factors = Vec::new();
    for g in irreducibles {
        let mut m = 0;
        while let Some(q) = rest.div_exact(&g) {
            rest = q;
            m += 1;
        }
        debug_assert!(m > 0);
        factors.push((g, m));
    }
    debug_assert!(rest.is_constant());
    Ok(Factorization { content, factors })
}

/// Irreducible factors of a primitive squarefree polynomial.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let f = f.primitive_part();
    let n = f.deg();
    if n <= 1 {
        return vec![f];
    }
    // x as a factor
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPolynomial::x()).expect("x divides f");
        let mut out = factor_squarefree(&rest);
        out.push(IntPolynomial::x());
        return out;
    }
    let Some((p, modular)) = choose_prime(&f) else {
        // no usable prime below the sieve limit; cannot happen for squarefree f
        // at the supported degrees, but fall back to reporting f whole
        return vec![f];
    };
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = factor_coefficient_bound(&f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, p, &modular, k);
    recombine(&f, lifted, &modulus)
}

/// Twice the leading coefficient times a Mignotte-style bound on the
/// coefficients of any factor.
fn factor_coefficient_bound(f: &IntPolynomial) -> BigInt {
    let n = f.deg();
    let norm_bound = BigInt::from(n + 1) * f.height();
    BigInt::from(2) * (BigInt::one() << n) * norm_bound * f.leading().abs()
}

fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; (limit + 1) as usize];
    let mut out = Vec::new();
    for i in 2..=limit {
        if sieve[i as usize] {
            out.push(i);
            let mut j = i * i;
            while j <= limit {
                sieve[j as usize] = false;
                j += i;
            }
        }
    }
    out
}

/// Picks a prime keeping `f` squarefree of full degree modulo `p` and having
/// the fewest irreducible factors there.
fn choose_prime(f: &IntPolynomial) -> Option<(u64, Vec<ModPoly>)> {
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in small_primes(2000).into_iter().skip(1) {
        let lc = f.leading().mod_floor(&BigInt::from(p));
        if lc.is_zero() {
            continue;
        }
        let fp = ModPoly::from_int(f, p).monic();
        if !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        let factors = berlekamp(&fp);
        tried += 1;
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        if tried >= PRIMES_TO_TRY || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

/// Lift monic factors of `lc(f)^{-1} f mod p` to modulus `p^k`.
fn hensel_lift(f: &IntPolynomial, p: u64, factors: &[ModPoly], k: u32) -> Vec<IntPolynomial> {
    let pb = BigInt::from(p);
    let big_m = num_traits::pow(pb.clone(), k as usize);
    let lc_inv = mod_inverse(&f.leading(), &big_m).expect("p does not divide lc(f)");
    let target = reduce(&f.scale(&lc_inv), &big_m);

    let whole = factors.iter().fold(ModPoly::one(p), |acc, u| acc.mul(u));
    // partial-fraction cofactors: s_i * (F / u_i) == 1 mod u_i
    let s: Vec<ModPoly> = factors
        .iter()
        .map(|u| {
            let cof = whole.div_rem(u).0.div_rem(u).1;
            let (g, inv, _) = cof.ext_gcd(u);
            assert!(g.is_one(), "modular factors must be coprime");
            inv
        })
        .collect();

    let mut lifted: Vec<IntPolynomial> = factors.iter().map(ModPoly::to_int).collect();
    let mut pk = pb.clone();
    for _ in 1..k {
        let prod = lifted.iter().fold(IntPolynomial::one(), |acc, u| &acc * u);
        let diff = &target - &prod;
        let e_int = IntPolynomial::new(
            diff.coeffs()
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(&pk);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        );
        let e = ModPoly::from_int(&e_int, p);
        for (i, u) in factors.iter().enumerate() {
            let delta = s[i].mul(&e).div_rem(u).1;
            lifted[i] = &lifted[i] + &delta.to_int().scale(&pk);
        }
        pk *= &pb;
        lifted = lifted.iter().map(|u| reduce(u, &pk)).collect();
    }
    lifted
}

fn reduce(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half: BigInt = m >> 1;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Zassenhaus recombination over subsets of increasing size.
fn recombine(f: &IntPolynomial, mut lifted: Vec<IntPolynomial>, m: &BigInt) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = rest.leading();
            let cand = subset
                .iter()
                .fold(IntPolynomial::constant(lc.clone()), |acc, &i| {
                    &acc * &lifted[i]
                });
            let cand = symmetric(&cand, m).primitive_part();
            if cand.deg() == 0 {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q.primitive_part();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out
}

/// Lexicographic enumeration of `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Dense polynomial over `F_p`, ascending, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.lead());
        self.scale(li)
    }

    fn scale(&self, k: u64) -> Self {
        ModPoly::new(self.p, self.c.iter().map(|&x| x * k % self.p).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        ModPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
                .collect(),
        )
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (ModPoly::new(p, Vec::new()), self.clone());
        }
        let li = self.inv(d.lead());
        let dd = d.deg();
        let mut q = vec![0u64; r.len() - dd];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top] * li % p;
            if t != 0 {
                for (i, &dc) in d.c.iter().enumerate() {
                    r[top - dd + i] = (r[top - dd + i] + p - t * dc % p) % p;
                }
            }
            q[top - dd] = t;
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let zero = ModPoly::new(p, Vec::new());
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), zero.clone());
        let (mut t0, mut t1) = (zero, ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let li = self.inv(r0.lead());
        (r0.scale(li), s0.scale(li), t0.scale(li))
    }

    fn derivative(&self) -> Self {
        ModPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| (i as u64 % self.p) * x % self.p)
                .collect(),
        )
    }

    fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.div_rem(m).1;
        let mut acc = ModPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(m).1;
            }
            base = base.mul(&base).div_rem(m).1;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Berlekamp factorization of a monic squarefree polynomial over `F_p`.
fn berlekamp(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.p;
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // rows: x^(i p) mod f
    let xp = ModPoly::new(p, vec![0, 1]).powmod(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = ModPoly::one(p);
    for _ in 0..n {
        let mut row = cur.c.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = cur.mul(&xp).div_rem(f).1;
    }
    // v (Q - I) = 0  <=>  (Q - I)^T v^T = 0
    let mut a = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let q = rows[j][i];
            a[i][j] = if i == j { (q + p - 1) % p } else { q };
        }
    }
    let basis = null_space(a, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        let v = ModPoly::new(p, v.clone());
        if v.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.deg() <= 1 || next.len() + 1 > r {
                next.push(u);
                continue;
            }
            let mut pending = vec![u];
            for s in 0..p {
                let shifted = v.sub(&ModPoly::new(p, vec![s]));
                let mut split = Vec::new();
                for w in pending {
                    let g = w.gcd(&shifted);
                    if g.deg() > 0 && g.deg() < w.deg() {
                        let h = w.div_rem(&g).0.monic();
                        split.push(g);
                        split.push(h);
                    } else {
                        split.push(w);
                    }
                }
                pending = split;
            }
            next.extend(pending);
        }
        factors = next;
    }
    factors.into_iter().map(|u| u.monic()).collect()
}

/// Basis of the null space of a square matrix over `F_p`.
fn null_space(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    let mut pivot_of_col = vec![None; m];
    let mut row = 0;
    for col in 0..m {
        let Some(piv) = (row..n).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let inv = pow_mod(a[row][col], p - 2, p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != row && a[i][col] != 0 {
                let k = a[i][col];
                let pivot = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = (*x + p - k * y % p) % p;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in 0..m {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; m];
        v[free] = 1;
        for col in 0..m {
            if let Some(r) = pivot_of_col[col] {
                v[col] = (p - a[r][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn two_distinct_quadratics() {
        let f = &p(&[5, -3, 1]) * &p(&[5, -1, 1]);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(_, m)| *m == 1));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn repeated_factor() {
        let f = p(&[5, -3, 1]).pow(2);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.factors, vec![(p(&[5, -3, 1]), 2)]);
    }

    #[test]
    fn irreducible_quartic() {
        assert!(factor_over_integers(&p(&[9, 0, -5, 0, 1]))
            .unwrap()
            .is_irreducible());
        // x^4 + 1 is irreducible over Z but splits modulo every prime
        assert!(factor_over_integers(&p(&[1, 0, 0, 0, 1]))
            .unwrap()
            .is_irreducible());
    }

    #[test]
    fn content_and_sign() {
        let f = p(&[-6, 0, -6]);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn degree_bound() {
        let f = IntPolynomial::monomial(BigInt::one(), 25);
        assert!(matches!(
            factor_over_integers(&f),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (x^2 - 2)(x^2 - 3)(x^2 - 5) splits into many factors mod small primes
        let f = &(&p(&[-2, 0, 1]) * &p(&[-3, 0, 1])) * &p(&[-5, 0, 1]);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn non_monic() {
        let f = &p(&[1, 2]) * &p(&[-3, 0, 5]);
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.factors, vec![(p(&[1, 2]), 1), (p(&[-3, 0, 5]), 1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn expand_is_identity(
            parts in prop::collection::vec(prop::collection::vec(-9i64..=9, 2..=4), 1..=4)
        ) {
            let mut f = IntPolynomial::one();
            for v in &parts {
                let g = IntPolynomial::from_i64s(v);
                if g.is_zero() { continue; }
                f = &f * &g;
            }
            prop_assume!(f.deg() >= 1);
            let fac = factor_over_integers(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (g, _) in &fac.factors {
                prop_assert!(factor_over_integers(g).unwrap().is_irreducible());
            }
        }
    }
}
