use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use siav::catalog::{builtin_degree2, Catalog};
use siav::exactmath::resultant::sylvester_resultant;
use siav::exactmath::{interpolate, resultant, IntPolynomial};
use siav::generators::{
    alpha_of, decompose_generator, enumerate_generators, generator_from_triple, is_weil_generator,
    WeilGeneratorRecord,
};
use siav::numfield::RealElement;
use siav::products::{check_product, pp_verdict};
use siav::weilpoly::{analyze, norm_via_real, twist, validate_weil, weil_from_real};

const QS: [i64; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..=20, 1..6).prop_map(|c| IntPolynomial::from_i64s(&c))
}

fn monic(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-9i64..=9, 1..=max_deg).prop_map(|mut c| {
        c.push(1);
        IntPolynomial::from_i64s(&c)
    })
}

/// A Weil polynomial of dimension 1 to 3 and its `q`.
fn weil() -> impl Strategy<Value = (IntPolynomial, BigInt)> {
    (
        prop::sample::select(&QS[..]),
        prop::collection::vec(-12i64..=12, 1..=3),
    )
        .prop_map(|(q, mut c)| {
            c.push(1);
            let q = BigInt::from(q);
            (weil_from_real(&IntPolynomial::from_i64s(&c), &q), q)
        })
        .prop_filter("not a Weil polynomial", |(h, q)| {
            validate_weil(h, q).is_weil
        })
}

fn q2_generators() -> &'static [WeilGeneratorRecord] {
    static GENS: OnceLock<Vec<WeilGeneratorRecord>> = OnceLock::new();
    GENS.get_or_init(|| {
        let cat = Catalog::bundled();
        let q = BigInt::from(2);
        let mut gens = Vec::new();
        for k in cat.class_number_one_fields() {
            gens.extend(enumerate_generators(k, &q).unwrap());
        }
        gens
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn resultant_matches_sylvester(f in poly(), g in poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn resultant_is_multiplicative(f in monic(3), g in monic(2), k in monic(2)) {
        let lhs = resultant(&f, &(&g * &k)).unwrap();
        prop_assert_eq!(lhs, resultant(&f, &g).unwrap() * resultant(&f, &k).unwrap());
    }

    #[test]
    fn interpolation_round_trip(f in poly()) {
        let pts: Vec<(BigInt, BigInt)> = (0..=f.deg() as i64)
            .map(|x| (BigInt::from(x), f.eval(&BigInt::from(x))))
            .collect();
        prop_assert_eq!(interpolate(&pts).unwrap(), f);
    }

    #[test]
    fn twist_is_an_involution((h, q) in weil()) {
        let t = twist(&h);
        prop_assert_eq!(&twist(&t), &h);
        prop_assert!(validate_weil(&t, &q).is_weil);
        let cat = builtin_degree2();
        let (a, b) = (pp_verdict(&h, &q, &cat).unwrap(), pp_verdict(&t, &q, &cat).unwrap());
        prop_assert_eq!((a.applicable, a.exists, a.count), (b.applicable, b.exists, b.count));
    }

    #[test]
    fn cross_norm_identity((h, q) in weil()) {
        let a = analyze(&h, &q).unwrap();
        if let Some(n) = a.norm_pi_diff {
            prop_assert_eq!(n, norm_via_real(&h, &q).unwrap());
        }
    }

    #[test]
    fn ordinary_iff_middle_coefficient_unit((h, q) in weil()) {
        let a = analyze(&h, &q).unwrap();
        prop_assert_eq!(a.is_ordinary, a.middle_coeff.gcd(&a.p).is_one());
    }

    #[test]
    fn triples_round_trip(field in 0usize..9, sign in prop::bool::ANY, eta in 0usize..2, a in -40i64..=40) {
        let cat = builtin_degree2();
        let k = &cat.fields[field];
        let u = RealElement::integer(if sign { 1 } else { -1 });
        let eta = eta % k.base.t_set().len();
        if let Ok(rec) = generator_from_triple(k, &u, eta, &BigInt::from(a)) {
            let t = rec.triple.clone().unwrap();
            let alpha = alpha_of(k, &t).unwrap();
            prop_assert_eq!(decompose_generator(k, &alpha).unwrap(), t);
            prop_assert!(is_weil_generator(k, &rec.h, &rec.q));
            let all = enumerate_generators(k, &rec.q).unwrap();
            prop_assert!(all.iter().any(|r| r.h == rec.h));
        }
    }

    #[test]
    fn product_check_ignores_member_order(
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
    ) {
        let gens = q2_generators();
        let pick = |i: &prop::sample::Index| gens[i.index(gens.len())].clone();
        let m = vec![pick(&a), pick(&b), pick(&c)];
        let r = vec![m[2].clone(), m[0].clone(), m[1].clone()];
        prop_assert_eq!(check_product(&m).unwrap().ok, check_product(&r).unwrap().ok);
    }
}

#[test]
fn zero_resultant_for_common_factor() {
    let f = IntPolynomial::from_i64s(&[-2, 1]);
    let g = &f * &IntPolynomial::from_i64s(&[3, 0, 1]);
    assert!(resultant(&f, &g).unwrap().is_zero());
}
