use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use siav::catalog::{parse_catalog, Catalog};
use siav::exactmath::{discriminant, is_prime_power, IntPolynomial};
use siav::generators::{enumerate_generators, is_weil_generator};
use siav::weilpoly::{validate_weil, weil_from_real};

#[test]
fn text_round_trip() {
    let cat = Catalog::bundled();
    let again = parse_catalog(&cat.to_text()).unwrap();
    assert_eq!(again, cat);
    assert_eq!(again.fingerprint(), cat.fingerprint());
    assert!(cat.violations().iter().all(|(_, v)| v.is_empty()));
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && n.sqrt().pow(2) == *n
}

/// A real Weil polynomial and its lift.
type Scanned = (IntPolynomial, IntPolynomial);

/// Every Weil polynomial of dimension `dim` over `q` (real polynomial roots
/// inside `[-2 sqrt q, 2 sqrt q]`), by coefficient bounds.
fn weil_polys(dim: usize, q: i64) -> Vec<Scanned> {
    let mut out = Vec::new();
    let push = |g: IntPolynomial, out: &mut Vec<_>| {
        let h = weil_from_real(&g, &BigInt::from(q));
        if validate_weil(&h, &BigInt::from(q)).is_weil {
            out.push((g, h));
        }
    };
    match dim {
        1 => {
            for b in -2 * q..=2 * q {
                if b * b <= 4 * q {
                    push(IntPolynomial::from_i64s(&[b, 1]), &mut out);
                }
            }
        }
        2 => {
            for b in -4 * q..=4 * q {
                if b * b > 16 * q {
                    continue;
                }
                for c in -4 * q..=4 * q {
                    push(IntPolynomial::from_i64s(&[c, b, 1]), &mut out);
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

#[test]
fn enumeration_matches_brute_scan() {
    let cat = Catalog::bundled();
    let qs: Vec<i64> = (2..=30)
        .filter(|&q| is_prime_power(&BigInt::from(q)))
        .collect();
    let scans: Vec<(i64, Vec<Scanned>, Vec<Scanned>)> = qs
        .iter()
        .map(|&q| (q, weil_polys(1, q), weil_polys(2, q)))
        .collect();
    let mut total = 0;
    for k in cat.class_number_one_fields() {
        let disc_f = k.base.disc().clone();
        for (q, ones, twos) in &scans {
            let qb = BigInt::from(*q);
            let cands = if k.degree() == 2 { ones } else { twos };
            let scanned: BTreeSet<IntPolynomial> = cands
                .iter()
                .filter(|(g, _)| {
                    // F = Q(sqrt disc g) must be the base field
                    k.degree() == 2 || {
                        let d = discriminant(g).unwrap();
                        let (m, r) = d.div_rem(&disc_f);
                        r == BigInt::from(0) && is_square(&m) && !is_square(&d)
                    }
                })
                .filter(|(_, h)| is_weil_generator(k, h, &qb))
                .map(|(_, h)| h.clone())
                .collect();
            let listed: BTreeSet<IntPolynomial> = enumerate_generators(k, &qb)
                .unwrap()
                .into_iter()
                .map(|r| r.h)
                .collect();
            assert_eq!(listed, scanned, "{} at q = {q}", k.id);
            total += listed.len();
        }
    }
    assert!(total > 0);
}
