//! Loading, merging and validating field catalogs.
//!
//! cargo run --example catalog_validate -- path/to/catalog.txt

use siav::catalog::{builtin_degree2, load_catalog, validate_catalog_text, Catalog};

fn main() -> siav::Result<()> {
    let bundled = Catalog::bundled();
    println!(
        "bundled: {} fields, {} of class number one, complete for degrees {:?}, fingerprint {}",
        bundled.fields.len(),
        bundled.class_number_one_fields().count(),
        bundled.complete_degrees,
        &bundled.fingerprint()[..16]
    );
    let k = bundled.get("quartic-1088").unwrap();
    let rel = k.rel()?;
    println!(
        "quartic-1088: F = Q(eta), {} ; gamma^2 + ({})gamma + ({}) = 0",
        k.base.eta_min_poly(),
        rel.b,
        rel.c
    );
    println!("  disc_K / disc_F^2 = {}", k.disc_ratio()?);

    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).map_err(|e| siav::Error::Io(e.to_string()))?;
        for (id, v) in validate_catalog_text(&text)? {
            println!(
                "{id}: {}",
                if v.is_empty() {
                    "ok".into()
                } else {
                    v.join("; ")
                }
            );
        }
        let merged = load_catalog(&path)?;
        println!("merged with builtins: {} fields", merged.fields.len());
        return Ok(());
    }

    let broken = builtin_degree2()
        .to_text()
        .replacen("disc_K = -7", "disc_K = -11", 1);
    for (id, v) in validate_catalog_text(&broken)?
        .into_iter()
        .filter(|(_, v)| !v.is_empty())
    {
        println!("edited builtins, {id}: {}", v.join("; "));
    }
    Ok(())
}
