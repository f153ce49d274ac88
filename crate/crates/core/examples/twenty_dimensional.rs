//! A 20-dimensional super-isolated product over F_2. The fields of its six
//! simple factors are outside the catalog, so members are bare polynomials.

use num_bigint::BigInt;
use siav::exactmath::IntPolynomial;
use siav::generators::record_from_poly;
use siav::products::{check_product, clique_products, ProductRecord};

fn main() -> siav::Result<()> {
    let q = BigInt::from(2);
    let polys: [&[i64]; 6] = [
        &[4, -4, 3, -2, 1],
        &[8, -16, 18, -15, 9, -4, 1],
        &[8, -12, 12, -9, 6, -3, 1],
        &[16, -40, 48, -40, 29, -20, 12, -5, 1],
        &[16, -40, 52, -50, 39, -25, 13, -5, 1],
        &[16, -32, 20, 4, -11, 2, 5, -4, 1],
    ];
    let members = polys
        .iter()
        .enumerate()
        .map(|(i, c)| record_from_poly(&format!("K{}", i + 1), &IntPolynomial::from_i64s(c), &q))
        .collect::<siav::Result<Vec<_>>>()?;
    for m in &members {
        println!(
            "{}: dim {}, real polynomial {}",
            m.field_id,
            m.dimension(),
            m.g_real
        );
    }

    let check = check_product(&members)?;
    for r in &check.resultants {
        print!("Res(g{}, g{}) = {}  ", r.i + 1, r.j + 1, r.abs_resultant);
    }
    println!("\nall pairwise resultants units: {}", check.ok);

    let mut edges = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            edges.push(ProductRecord::new(vec![
                members[i].clone(),
                members[j].clone(),
            ]));
        }
    }
    let cliques = clique_products(&edges, members.len())?;
    let top = cliques
        .iter()
        .max_by_key(|c| c.members.len())
        .expect("nonempty");
    println!(
        "largest clique: {} members, type {}, deg h = {}",
        top.members.len(),
        top.type_label(),
        top.h_product.deg()
    );
    Ok(())
}
