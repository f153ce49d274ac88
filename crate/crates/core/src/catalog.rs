//! CM-field tables: the built-in imaginary quadratic list, a line-oriented
//! text format for further fields, and validation.
//!
//! ```text
//! complete = 4            # optional: the file holds every class-number-one field of these degrees
//!
//! field {
//!   id        = quartic-125
//!   f_poly    = -1,-1,1   # eta's minimal polynomial, ascending; "0,1" means F = Q
//!   rel_b     = 0,1       # gamma^2 + b gamma + c = 0, coordinates over {1, eta}
//!   rel_c     = 1,0
//!   disc_K    = 125
//!   class_number_one = true
//!   source    = free text
//! }
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactmath::IntPolynomial;
use crate::numfield::{
    validate_field_data, CMFieldData, RealElement, RelativeGenerator, TotallyRealField,
};

/// The shipped quartic list (91 class-number-one fields and one field of
/// class number two).
pub const BUNDLED_QUARTIC: &str = include_str!("../data/quartic_cm.txt");

const BUILTIN_SOURCE: &str =
    "imaginary quadratic field of class number one (Heegner, Baker, Stark)";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub fields: Vec<CMFieldData>,
    /// Degrees `[K:Q]` for which the class-number-one list is complete.
    pub complete_degrees: BTreeSet<usize>,
}

/// Per-field quantities cached for enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldRuntime {
    pub fundamental_unit: Option<RealElement>,
    pub t_set: Vec<RealElement>,
    pub norm_gamma_diff: RealElement,
    pub disc_ratio: BigInt,
}

pub fn builtin_degree2() -> Catalog {
    let data: [(i64, i64, i64); 9] = [
        (-3, -1, 1),
        (-4, 0, 1),
        (-7, -1, 2),
        (-8, 0, 2),
        (-11, -1, 3),
        (-19, -1, 5),
        (-43, -1, 11),
        (-67, -1, 17),
        (-163, -1, 41),
    ];
    let fields = data
        .iter()
        .map(|&(d, b, c)| CMFieldData {
            id: format!("disc{d}"),
            base: TotallyRealField::rationals(),
            rel: Some(RelativeGenerator {
                b: RealElement::integer(b),
                c: RealElement::integer(c),
            }),
            disc_k: BigInt::from(d),
            class_number_one: true,
            source: BUILTIN_SOURCE.to_string(),
        })
        .collect();
    Catalog {
        fields,
        complete_degrees: BTreeSet::from([2]),
    }
}

pub fn derive_runtime_data(k: &CMFieldData) -> Result<FieldRuntime> {
    Ok(FieldRuntime {
        fundamental_unit: k.base.unit().cloned(),
        t_set: k.base.t_set().to_vec(),
        norm_gamma_diff: k.norm_gamma_diff()?,
        disc_ratio: k.disc_ratio()?,
    })
}

/// Builtins plus the fields in the file at `path`.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut cat = builtin_degree2();
    cat.merge(parse_catalog(&text)?)?;
    Ok(cat)
}

impl Catalog {
    /// Builtins plus the shipped quartic list.
    pub fn bundled() -> Self {
        let mut cat = builtin_degree2();
        cat.merge(parse_catalog(BUNDLED_QUARTIC).expect("bundled catalog parses"))
            .expect("bundled catalog merges");
        cat
    }

    /// Adds the fields of `other`. Entries identical to an existing one are
    /// skipped; a reused id with different data is an error.
    pub fn merge(&mut self, other: Catalog) -> Result<()> {
        for f in other.fields {
            match self.fields.iter().find(|e| e.id == f.id) {
                Some(e) if *e == f => {}
                Some(_) => return Err(Error::Data(format!("duplicate field id {}", f.id))),
                None => self.fields.push(f),
            }
        }
        self.complete_degrees.extend(other.complete_degrees);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&CMFieldData> {
        self.fields.iter().find(|f| f.id == id)
    }

    pub fn is_complete_for(&self, degree: usize) -> bool {
        self.complete_degrees.contains(&degree)
    }

    /// Fields usable for enumeration: class number one with a relative generator.
    pub fn class_number_one_fields(&self) -> impl Iterator<Item = &CMFieldData> {
        self.fields
            .iter()
            .filter(|f| f.class_number_one && f.rel.is_some())
    }

    /// Fields whose discriminant pair is `(disc_f, disc_k)` and degree `degree`.
    pub fn matching(&self, degree: usize, disc_f: &BigInt, disc_k: &BigInt) -> Vec<&CMFieldData> {
        self.fields
            .iter()
            .filter(|f| f.degree() == degree && f.base.disc() == disc_f && &f.disc_k == disc_k)
            .collect()
    }

    /// Serializes in the catalog file format; parsing the result gives back
    /// an equal catalog.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.complete_degrees.is_empty() {
            let ds: Vec<String> = self
                .complete_degrees
                .iter()
                .map(|d| d.to_string())
                .collect();
            let _ = writeln!(s, "complete = {}\n", ds.join(","));
        }
        for f in &self.fields {
            let _ = writeln!(s, "field {{");
            let _ = writeln!(s, "  id = {}", f.id);
            let _ = writeln!(s, "  f_poly = {}", f.base.eta_min_poly().to_csv());
            if let Some(r) = &f.rel {
                let _ = writeln!(s, "  rel_b = {}", coords(&r.b));
                let _ = writeln!(s, "  rel_c = {}", coords(&r.c));
            }
            let _ = writeln!(s, "  disc_K = {}", f.disc_k);
            let _ = writeln!(s, "  class_number_one = {}", f.class_number_one);
            let _ = writeln!(s, "  source = {}", f.source);
            let _ = writeln!(s, "}}\n");
        }
        s
    }

    /// Hex SHA-256 of [`Catalog::to_text`].
    pub fn fingerprint(&self) -> String {
        text_fingerprint(&self.to_text())
    }

    /// Every invariant violation, keyed by field id.
    pub fn violations(&self) -> Vec<(String, Vec<String>)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for f in &self.fields {
            let mut v = validate_field_data(f);
            if !seen.insert(f.id.clone()) {
                v.push("duplicate id".into());
            }
            if let Err(e) = f.disc_ratio() {
                v.push(e.to_string());
            }
            out.push((f.id.clone(), v));
        }
        out
    }
}

/// Hex SHA-256 of arbitrary text.
pub fn text_fingerprint(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn coords(x: &RealElement) -> String {
    let (a, b) = x.int_coords().expect("catalog coordinates are integral");
    format!("{a},{b}")
}

/// A field block as read from text, before validation.
#[derive(Debug, Default)]
struct RawEntry {
    line: usize,
    id: Option<String>,
    f_poly: Option<IntPolynomial>,
    rel_b: Option<RealElement>,
    rel_c: Option<RealElement>,
    disc_k: Option<BigInt>,
    class_number_one: Option<bool>,
    source: Option<String>,
}

fn parse_pair(value: &str, line: usize) -> Result<RealElement> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    let nums: Option<Vec<BigInt>> = parts.iter().map(|p| p.parse().ok()).collect();
    match nums.as_deref() {
        Some([a]) => Ok(RealElement::from_ints(a.clone(), 0)),
        Some([a, b]) => Ok(RealElement::from_ints(a.clone(), b.clone())),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected one or two integers, got {value:?}"),
        }),
    }
}

/// Parses catalog text without adding the builtins. Entries are validated;
/// any violation is reported as a data error naming the entry.
pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let raw = parse_raw(text)?;
    let mut cat = Catalog {
        fields: Vec::new(),
        complete_degrees: raw.0,
    };
    let mut errors = Vec::new();
    for e in raw.1 {
        match build_entry(e) {
            Ok(f) => {
                if cat.fields.iter().any(|g| g.id == f.id) {
                    errors.push(format!("{}: duplicate id", f.id));
                    continue;
                }
                let v = validate_field_data(&f);
                if v.is_empty() {
                    cat.fields.push(f);
                } else {
                    errors.push(format!("{}: {}", f.id, v.join("; ")));
                }
            }
            Err(err) => errors.push(err.to_string()),
        }
    }
    if !errors.is_empty() {
        return Err(Error::Data(errors.join("\n")));
    }
    Ok(cat)
}

/// Per-entry validation of catalog text: parse errors fail, invariant
/// violations are collected.
pub fn validate_catalog_text(text: &str) -> Result<Vec<(String, Vec<String>)>> {
    let (_, entries) = parse_raw(text)?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for e in entries {
        let line = e.line;
        let label =
            e.id.clone()
                .unwrap_or_else(|| format!("entry at line {line}"));
        let mut v = match build_entry(e) {
            Ok(f) => {
                let mut v = validate_field_data(&f);
                if let Err(err) = f.disc_ratio() {
                    v.push(err.to_string());
                }
                v
            }
            Err(err) => vec![err.to_string()],
        };
        if !seen.insert(label.clone()) {
            v.push("duplicate id".into());
        }
        out.push((label, v));
    }
    Ok(out)
}

fn build_entry(e: RawEntry) -> Result<CMFieldData> {
    let line = e.line;
    let missing = |k: &str| Error::Parse {
        line,
        msg: format!("field block lacks {k}"),
    };
    let id = e.id.ok_or_else(|| missing("id"))?;
    let f_poly = e.f_poly.ok_or_else(|| missing("f_poly"))?;
    let disc_k = e.disc_k.ok_or_else(|| missing("disc_K"))?;
    let class_number_one = e
        .class_number_one
        .ok_or_else(|| missing("class_number_one"))?;
    let base = TotallyRealField::from_eta_poly(&f_poly)
        .map_err(|err| Error::Data(format!("{id}: {err}")))?;
    let rel = match (e.rel_b, e.rel_c) {
        (Some(b), Some(c)) => {
            if base.degree() == 1 && (!b.c1.is_zero() || !c.c1.is_zero()) {
                return Err(Error::Data(format!(
                    "{id}: eta coordinates must vanish over Q"
                )));
            }
            Some(RelativeGenerator { b, c })
        }
        (None, None) => None,
        _ => {
            return Err(Error::Parse {
                line,
                msg: "rel_b and rel_c must appear together".into(),
            })
        }
    };
    Ok(CMFieldData {
        id,
        base,
        rel,
        disc_k,
        class_number_one,
        source: e.source.unwrap_or_default(),
    })
}

type RawCatalog = (BTreeSet<usize>, Vec<RawEntry>);

fn parse_raw(text: &str) -> Result<RawCatalog> {
    let mut complete = BTreeSet::new();
    let mut entries = Vec::new();
    let mut cur: Option<RawEntry> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw_line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        if cur.is_none() {
            if t == "field {"
                || (t.starts_with("field") && t.trim_start_matches("field").trim() == "{")
            {
                cur = Some(RawEntry {
                    line,
                    ..Default::default()
                });
                continue;
            }
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| err(format!("unexpected line {t:?}")))?;
            if k.trim() != "complete" {
                return Err(err(format!("unknown top-level key {:?}", k.trim())));
            }
            for d in v.split(',') {
                let d = d.split('#').next().unwrap_or("").trim();
                complete.insert(
                    d.parse::<usize>()
                        .map_err(|_| err(format!("bad degree {d:?}")))?,
                );
            }
            continue;
        }
        if t == "}" {
            entries.push(cur.take().expect("inside a block"));
            continue;
        }
        let e = cur.as_mut().expect("inside a block");
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got {t:?}")))?;
        let k = k.trim();
        let v = v.trim();
        // trailing comments are allowed except in the free-text source
        let vv = if k == "source" {
            v
        } else {
            v.split('#').next().unwrap_or("").trim()
        };
        let dup = |seen: bool| {
            if seen {
                Err(err(format!("repeated key {k}")))
            } else {
                Ok(())
            }
        };
        match k {
            "id" => {
                dup(e.id.is_some())?;
                if vv.is_empty() || vv.contains(char::is_whitespace) {
                    return Err(err(format!("bad id {vv:?}")));
                }
                e.id = Some(vv.to_string());
            }
            "f_poly" => {
                dup(e.f_poly.is_some())?;
                e.f_poly = Some(
                    IntPolynomial::parse_csv(vv)
                        .ok_or_else(|| err(format!("bad polynomial {vv:?}")))?,
                );
            }
            "rel_b" => {
                dup(e.rel_b.is_some())?;
                e.rel_b = Some(parse_pair(vv, line)?);
            }
            "rel_c" => {
                dup(e.rel_c.is_some())?;
                e.rel_c = Some(parse_pair(vv, line)?);
            }
            "disc_K" => {
                dup(e.disc_k.is_some())?;
                e.disc_k = Some(vv.parse().map_err(|_| err(format!("bad integer {vv:?}")))?);
            }
            "class_number_one" => {
                dup(e.class_number_one.is_some())?;
                e.class_number_one = Some(match vv {
                    "true" => true,
                    "false" => false,
                    _ => return Err(err(format!("expected true or false, got {vv:?}"))),
                });
            }
            "source" => {
                dup(e.source.is_some())?;
                e.source = Some(vv.to_string());
            }
            _ => return Err(err(format!("unknown key {k:?}"))),
        }
    }
    if let Some(e) = cur {
        return Err(Error::Parse {
            line: e.line,
            msg: "unterminated field block".into(),
        });
    }
    Ok((complete, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA5: &str = "field {\n  id = zeta5\n  f_poly = -1,-1,1\n  rel_b = 0,1\n  rel_c = 1,0\n  disc_K = 125\n  class_number_one = true\n  source = cyclotomic\n}\n";

    #[test]
    fn builtins() {
        let c = builtin_degree2();
        assert_eq!(c.fields.len(), 9);
        assert!(c.violations().iter().all(|(_, v)| v.is_empty()));
        let g = c.get("disc-4").unwrap();
        let rt = derive_runtime_data(g).unwrap();
        assert_eq!(rt.norm_gamma_diff, RealElement::integer(4));
        assert_eq!(rt.disc_ratio, BigInt::from(-4));
        let rt = derive_runtime_data(c.get("disc-7").unwrap()).unwrap();
        assert_eq!(rt.norm_gamma_diff, RealElement::integer(7));
    }

    #[test]
    fn quartic_entry() {
        let c = parse_catalog(ZETA5).unwrap();
        let rt = derive_runtime_data(&c.fields[0]).unwrap();
        assert_eq!(rt.disc_ratio, BigInt::from(5));
    }

    #[test]
    fn rejects_bad_entries() {
        let bad = ZETA5.replace("disc_K = 125", "disc_K = 126");
        assert!(matches!(parse_catalog(&bad), Err(Error::Data(_))));
        let unknown = ZETA5.replace("source", "origin");
        assert!(matches!(
            parse_catalog(&unknown),
            Err(Error::Parse { line: 8, .. })
        ));
        let twice = format!("{ZETA5}{ZETA5}");
        assert!(parse_catalog(&twice).is_err());
    }

    #[test]
    fn round_trip() {
        let c = Catalog::bundled();
        let again = parse_catalog(&c.to_text()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.fingerprint(), c.fingerprint());
    }

    #[test]
    fn bundled_contents() {
        let c = Catalog::bundled();
        assert_eq!(c.fields.len(), 9 + 92);
        assert_eq!(c.class_number_one_fields().count(), 100);
        assert!(c.is_complete_for(2) && c.is_complete_for(4));
        assert!(c.violations().iter().all(|(_, v)| v.is_empty()));
    }
}
