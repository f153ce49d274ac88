//! Everything known about one Weil polynomial: invariants, super-isolation
//! and principal polarizations.
//!
//! cargo run --example analyze_weil -- 4,-4,3,-2,1 2

use siav::catalog::Catalog;
use siav::cli::commands::{cmd_analyze, parse_poly, parse_q};

fn main() -> siav::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (poly, q) = match args.as_slice() {
        [p, q] => (p.as_str(), q.as_str()),
        _ => ("4,-4,3,-2,1", "2"),
    };
    let report = cmd_analyze(&parse_poly(poly, true)?, &parse_q(q)?, &Catalog::bundled())?;
    print!("{}", report.text);
    Ok(())
}
