//! Resultants, factorization, real-root counting and a fundamental unit.

use num_bigint::BigInt;
use siav::exactmath::{
    discriminant, factor_over_integers, integer_roots, resultant, sturm_count, Bound, IntPolynomial,
};
use siav::numfield::TotallyRealField;

fn main() -> siav::Result<()> {
    let f = IntPolynomial::from_i64s(&[-3, 1]);
    for g in [
        IntPolynomial::from_i64s(&[-1, 1]),
        IntPolynomial::from_i64s(&[-4, 1]),
    ] {
        println!("|Res({f}, {g})| = {}", resultant(&f, &g)?.magnitude());
    }

    let h = IntPolynomial::from_i64s(&[-6, 11, -6, 1]);
    println!("\n{h}");
    println!("  discriminant {}", discriminant(&h)?);
    println!(
        "  integer roots {:?}",
        integer_roots(&h)?
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!(
        "  real roots in (0, 2]: {}",
        sturm_count(&h, &Bound::int(0), &Bound::int(2))?
    );

    let k = IntPolynomial::from_i64s(&[4, 0, -5, 0, 1]).pow(2);
    let fac = factor_over_integers(&k)?;
    println!("\n{k} =");
    for (p, m) in &fac.factors {
        println!("  ({p})^{m}");
    }

    let field = TotallyRealField::real_quadratic(&BigInt::from(21))?;
    let u = field.fundamental_unit()?;
    println!("\nQ(sqrt 21): fundamental unit {u} (eta^2 - eta - 5 = 0)");
    println!(
        "  minimal polynomial {}",
        field.min_poly(&u).expect("integral")
    );
    println!(
        "  norm {}, totally positive: {}",
        field.norm(&u),
        field.is_totally_positive(&u)
    );
    Ok(())
}
