//! Counts of super-isolated ordinary products per q and decomposition type,
//! first with the imaginary quadratic builtins, then with the bundled
//! quartic fields.

use std::time::Instant;

use siav::catalog::{builtin_degree2, Catalog};
use siav::products::table1;

fn main() -> siav::Result<()> {
    for (label, cat) in [
        ("builtins", builtin_degree2()),
        ("bundled", Catalog::bundled()),
    ] {
        let start = Instant::now();
        let t = table1(&cat)?;
        println!(
            "{label} ({} fields), {:.2?}",
            cat.fields.len(),
            start.elapsed()
        );
        println!("{}", t.to_text());
    }
    Ok(())
}
