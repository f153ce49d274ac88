//! Weil generators of a CM field, and the two ways of recognizing one.

use num_bigint::BigInt;
use siav::catalog::Catalog;
use siav::generators::{brute_force_maximality, enumerate_generators_upto, maximality_index};

fn main() -> siav::Result<()> {
    let cat = Catalog::bundled();
    for id in ["disc-7", "quartic-125"] {
        let k = cat.get(id).expect("bundled field");
        let gens = enumerate_generators_upto(k, 60)?;
        println!(
            "{id}: disc_K = {}, {} generators with q <= 60",
            k.disc_k,
            gens.len()
        );
        for r in gens.iter().take(8) {
            let t = r.triple.as_ref().expect("enumerated");
            let idx = maximality_index(&r.h, &r.q, &k.disc_k)?;
            println!(
                "  q = {:<3} {:<36} u = {}, eta #{}, a = {:<4} [O_K : Z[pi, conj pi]] = {idx}, oracle agrees: {}",
                r.q,
                r.h.to_string(),
                t.u,
                t.eta_index,
                t.a,
                brute_force_maximality(k, &r.h, &r.q)?
            );
        }
    }
    // pi = 2 + 2i has norm 8 but Z[pi, conj pi] is not maximal
    let k = cat.get("disc-4").expect("builtin");
    let h = siav::exactmath::IntPolynomial::from_i64s(&[8, -4, 1]);
    println!(
        "\nx^2 - 4x + 8 in Q(i): index {}",
        maximality_index(&h, &BigInt::from(8), &k.disc_k)?
    );
    Ok(())
}
