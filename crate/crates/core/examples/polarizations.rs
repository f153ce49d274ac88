//! Principal polarizations on super-isolated varieties and their powers.

use num_bigint::BigInt;
use siav::catalog::Catalog;
use siav::exactmath::IntPolynomial;
use siav::products::pp_verdict;
use siav::weilpoly::{middle_coeff, norm_pi_minus_conj};

fn main() -> siav::Result<()> {
    let cat = Catalog::bundled();
    let f = IntPolynomial::from_i64s(&[5, -3, 1]);
    let cases = [
        (
            IntPolynomial::from_i64s(&[16, 8, -12, -2, 7, -1, -3, 1, 1]),
            2,
        ),
        (IntPolynomial::from_i64s(&[3, -1, 1]), 3),
        (IntPolynomial::from_i64s(&[9, 0, -5, 0, 1]), 3),
        (IntPolynomial::from_i64s(&[4, -4, 3, -2, 1]), 2),
        (f.clone(), 5),
        (f.pow(8), 5),
        (f.pow(3), 5),
        (&f * &IntPolynomial::from_i64s(&[5, -1, 1]), 5),
    ];
    for (h, q) in cases {
        let q = BigInt::from(q);
        let v = pp_verdict(&h, &q, &cat)?;
        let label = if h.deg() > 8 {
            format!("({f})^{}", h.deg() / 2)
        } else {
            h.to_string()
        };
        println!("q = {q}  {label}");
        if h.deg() <= 8 {
            println!(
                "  Norm(pi - conj pi) = {}, a_g = {}",
                norm_pi_minus_conj(&h, &q)?,
                middle_coeff(&h)
            );
        }
        match (v.applicable, v.count) {
            (false, _) => println!("  inapplicable: {}", v.reason),
            (true, Some(n)) => println!("  exists: {}, count {n}", v.exists),
            (true, None) => println!("  exists: {}, count unknown ({})", v.exists, v.reason),
        }
    }
    Ok(())
}
