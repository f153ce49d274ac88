//! Products of two super-isolated varieties with the same q, from the
//! polynomial system in the trace shift and q.

use siav::catalog::Catalog;
use siav::products::{enumerate_pairs_with, solve_pair_system, EliminationOrder};

fn main() -> siav::Result<()> {
    let cat = Catalog::bundled();
    let (k1, k2) = (cat.get("disc-4").unwrap(), cat.get("disc-19").unwrap());

    for (e1, e2) in [(0, 0)] {
        let sys = solve_pair_system(k1, e1, k2, e2, EliminationOrder::QFirst)?;
        println!(
            "T-set pair {:?}: R(d) = {}",
            sys.eta_pair, sys.shift_resultant
        );
        println!(
            "  d candidates {:?}",
            sys.d_candidates
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
        for (d, e) in &sys.eliminants {
            println!("  d = {d}: eliminant {e}");
        }
        for (a1, a2, q) in &sys.solutions {
            println!("  solution a1 = {a1}, a2 = {a2}, q = {q}");
        }
    }
    for p in enumerate_pairs_with(k1, k2, EliminationOrder::TraceFirst)? {
        let hs: Vec<String> = p
            .members
            .iter()
            .map(|m| format!("{} [{}]", m.h, m.field_id))
            .collect();
        println!("q = {}: {}", p.q, hs.join("  x  "));
    }

    for (a, b) in [("disc-11", "disc-19"), ("quartic-125", "disc-3")] {
        let n = enumerate_pairs_with(
            cat.get(a).unwrap(),
            cat.get(b).unwrap(),
            EliminationOrder::QFirst,
        )?
        .len();
        println!("{a} x {b}: {n} pair(s)");
    }
    Ok(())
}
