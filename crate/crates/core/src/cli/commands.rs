use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::report::RunReport;
use crate::catalog::{text_fingerprint, validate_catalog_text, Catalog};
use crate::error::{Error, Result};
use crate::exactmath::{is_prime_power, IntPolynomial};
use crate::generators::{enumerate_generators, WeilGeneratorRecord};
use crate::products::{
    enumerate_pairs_with, is_super_isolated, pp_from_report, table1, EliminationOrder,
    ProductRecord,
};
use crate::weilpoly::{analyze, norm_via_real};

/// Parses ascending comma-separated coefficients.
pub fn parse_poly(s: &str, monic_check: bool) -> Result<IntPolynomial> {
    let h = IntPolynomial::parse_csv(s)
        .ok_or_else(|| Error::Usage(format!("cannot parse coefficient list {s:?}")))?;
    if h.is_zero() {
        return Err(Error::Usage(
            "the zero polynomial is not a Weil polynomial".into(),
        ));
    }
    if monic_check && !h.is_monic() {
        return Err(Error::Usage(format!(
            "{h} is not monic (the last coefficient must be 1)"
        )));
    }
    Ok(h)
}

pub fn parse_q(s: &str) -> Result<BigInt> {
    let q: BigInt = s
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("q must be an integer, got {s:?}")))?;
    if q < BigInt::from(2) || !is_prime_power(&q) {
        return Err(Error::Usage(format!("q = {q} is not a prime power >= 2")));
    }
    Ok(q)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn usage(e: Error) -> Error {
    match e {
        Error::Domain(m) | Error::NotWeil(m) | Error::Capability(m) => Error::Usage(m),
        other => other,
    }
}

/// Full analysis of one polynomial: Weil data, super-isolation and
/// principal polarizations.
pub fn cmd_analyze(h: &IntPolynomial, q: &BigInt, catalog: &Catalog) -> Result<RunReport> {
    let a = analyze(h, q).map_err(usage)?;
    let si = is_super_isolated(h, q, catalog).map_err(usage)?;
    let pp = pp_from_report(q, &si)?;
    let cross = match (&a.norm_pi_diff, a.is_weil && !a.has_real_roots) {
        (Some(n), true) => {
            let r = norm_via_real(h, q)?;
            Some(
                json!({ "norm_from_h": n.to_string(), "norm_from_real": r.to_string(), "holds": *n == r }),
            )
        }
        _ => None,
    };
    let mut r = RunReport::new(
        "analyze",
        json!({ "poly": h.to_csv(), "q": q.to_string() }),
        catalog.fingerprint(),
        json!({
            "analysis": to_value(&a),
            "cross_norm": cross,
            "super_isolation": to_value(&si),
            "polarization": to_value(&pp),
        }),
    );
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut t = String::new();
    let _ = writeln!(t, "h = {h}");
    let _ = writeln!(t, "q = {q} = {}^{}, dimension {}", a.p, a.v, a.g);
    match &a.weil_reason {
        None => {
            let _ = writeln!(t, "Weil polynomial: yes");
        }
        Some(why) => {
            let _ = writeln!(t, "Weil polynomial: no ({why})");
        }
    }
    let _ = writeln!(
        t,
        "squarefree: {}  real roots: {}  ordinary: {}  ideal: {}",
        yn(a.is_squarefree),
        yn(a.has_real_roots),
        yn(a.is_ordinary),
        yn(a.is_ideal)
    );
    for why in &a.ideal_reasons {
        let _ = writeln!(t, "  not ideal: {why}");
    }
    let _ = writeln!(t, "Newton slopes: {}", a.newton_slopes.join(" "));
    if let Some(g) = &a.real_weil_poly {
        let _ = writeln!(t, "real Weil polynomial: {g}");
    }
    let _ = writeln!(t, "middle coefficient a_{} = {}", a.g, a.middle_coeff);
    if let Some(n) = &a.norm_pi_diff {
        let _ = writeln!(t, "Norm(pi - conj pi) = {n}");
    }
    if let Some(d) = &a.disc_order {
        let _ = writeln!(t, "disc Z[pi, conj pi] = {d}");
    }
    for (f, m) in &a.irreducible_factors {
        let _ = writeln!(t, "factor: ({f})^{m}");
    }
    let _ = writeln!(
        t,
        "super-isolated: {:?} ({})",
        si.verdict.outcome, si.verdict.reason
    );
    if let Some(c) = &si.product_check {
        for pr in &c.resultants {
            let _ = writeln!(
                t,
                "  |Res(g_{}, g_{})| = {}",
                pr.i + 1,
                pr.j + 1,
                pr.abs_resultant
            );
        }
    }
    if pp.applicable {
        let count = pp
            .count
            .map(|c| c.to_string())
            .unwrap_or_else(|| "unknown".into());
        let _ = writeln!(
            t,
            "principal polarization: exists = {}, count = {count} ({})",
            pp.exists, pp.reason
        );
    } else {
        let _ = writeln!(t, "principal polarization: inapplicable ({})", pp.reason);
    }
    r.text = t;
    r.partial = si.verdict.outcome == crate::generators::Outcome::UnknownField;
    Ok(r)
}

/// Which norms `enum-field` covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSpec {
    Single(BigInt),
    Range { min: u64, max: u64 },
}

pub fn cmd_enum_field(field_id: &str, qs: &QSpec, catalog: &Catalog) -> Result<RunReport> {
    let k = catalog
        .get(field_id)
        .ok_or_else(|| Error::Usage(format!("no field with id {field_id:?} in the catalog")))?;
    let norms: Vec<BigInt> = match qs {
        QSpec::Single(q) => vec![q.clone()],
        QSpec::Range { min, max } => (*min.max(&2)..=*max)
            .map(BigInt::from)
            .filter(is_prime_power)
            .collect(),
    };
    let mut recs: Vec<WeilGeneratorRecord> = Vec::new();
    for q in &norms {
        recs.extend(enumerate_generators(k, q).map_err(usage)?);
    }
    recs.sort();
    let inputs = match qs {
        QSpec::Single(q) => json!({ "field": field_id, "q": q.to_string() }),
        QSpec::Range { min, max } => json!({ "field": field_id, "q_min": min, "q_max": max }),
    };
    let mut r = RunReport::new(
        "enum-field",
        inputs,
        catalog.fingerprint(),
        json!({ "records": to_value(&recs) }),
    );
    let mut t = format!("{} generator(s) of {field_id}\n", recs.len());
    let mut csv = String::from("field,q,h,g_real,u,eta_index,a\n");
    for rec in &recs {
        let tr = rec
            .triple
            .as_ref()
            .expect("enumerated records carry a triple");
        let _ = writeln!(
            t,
            "q = {:<6} h = {:<40} (u, eta, a) = ({}, {}, {})",
            rec.q,
            rec.h.to_string(),
            tr.u,
            tr.eta_index,
            tr.a
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            rec.field_id, rec.q, rec.h, rec.g_real, tr.u, tr.eta_index, tr.a
        );
    }
    r.text = t;
    r.csv = Some(csv);
    Ok(r)
}

/// Which field pairs `pairs` covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSpec {
    Fields(String, String),
    All,
}

pub fn cmd_pairs(spec: &PairSpec, order: EliminationOrder, catalog: &Catalog) -> Result<RunReport> {
    use rayon::prelude::*;
    let work: Vec<(String, String)> = match spec {
        PairSpec::Fields(a, b) => {
            for id in [a, b] {
                if catalog.get(id).is_none() {
                    return Err(Error::Usage(format!(
                        "no field with id {id:?} in the catalog"
                    )));
                }
            }
            vec![(a.clone(), b.clone())]
        }
        PairSpec::All => {
            let ids: Vec<String> = catalog
                .class_number_one_fields()
                .map(|f| f.id.clone())
                .collect();
            let mut w = Vec::new();
            for i in 0..ids.len() {
                for j in i..ids.len() {
                    w.push((ids[i].clone(), ids[j].clone()));
                }
            }
            w
        }
    };
    let lists = work
        .par_iter()
        .map(|(a, b)| {
            let (ka, kb) = (
                catalog.get(a).expect("checked"),
                catalog.get(b).expect("checked"),
            );
            enumerate_pairs_with(ka, kb, order)
        })
        .collect::<Result<Vec<_>>>()
        .map_err(usage)?;
    let mut all: Vec<ProductRecord> = lists.into_iter().flatten().collect();
    all.sort_by_key(|p| p.key());
    all.dedup_by(|a, b| a.key() == b.key());
    let inputs = match spec {
        PairSpec::Fields(a, b) => json!({ "fields": [a, b] }),
        PairSpec::All => json!({ "fields": "all" }),
    };
    let mut r = RunReport::new(
        "pairs",
        inputs,
        catalog.fingerprint(),
        json!({ "products": to_value(&all) }),
    );
    let mut t = format!("{} pair(s)\n", all.len());
    let mut csv = String::from("q,type,field_1,h_1,field_2,h_2\n");
    for p in &all {
        let (m1, m2) = (&p.members[0], &p.members[1]);
        let _ = writeln!(
            t,
            "q = {:<6} {:<4} {} [{}]  x  {} [{}]",
            p.q,
            p.type_label(),
            m1.h,
            m1.field_id,
            m2.h,
            m2.field_id
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            p.q,
            p.type_label(),
            m1.field_id,
            m1.h,
            m2.field_id,
            m2.h
        );
    }
    r.text = t;
    r.csv = Some(csv);
    Ok(r)
}

pub fn cmd_table(catalog: &Catalog) -> Result<RunReport> {
    let t = table1(catalog)?;
    let mut r = RunReport::new("table", json!({}), catalog.fingerprint(), to_value(&t));
    r.partial = t.partial;
    r.text = t.to_text();
    r.csv = Some(t.to_csv());
    Ok(r)
}

/// Validates a catalog file entry by entry; `None` checks the builtins.
pub fn cmd_catalog_validate(path: Option<&Path>) -> Result<RunReport> {
    let (label, text) = match path {
        None => (
            "builtin".to_string(),
            crate::catalog::builtin_degree2().to_text(),
        ),
        Some(p) if p.as_os_str() == "bundled" => {
            ("bundled".to_string(), Catalog::bundled().to_text())
        }
        Some(p) => {
            if !p.exists() {
                return Err(Error::Usage(format!("{} does not exist", p.display())));
            }
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            (p.display().to_string(), text)
        }
    };
    let entries = validate_catalog_text(&text)?;
    let bad = entries.iter().filter(|(_, v)| !v.is_empty()).count();
    let results: Vec<Value> = entries
        .iter()
        .map(|(id, v)| json!({ "id": id, "ok": v.is_empty(), "violations": v }))
        .collect();
    let mut r = RunReport::new(
        "catalog-validate",
        json!({ "path": label }),
        text_fingerprint(&text),
        json!({ "entries": results, "violations": bad }),
    );
    r.ok = bad == 0;
    let mut t = String::new();
    for (id, v) in &entries {
        if v.is_empty() {
            let _ = writeln!(t, "{id}: ok");
        } else {
            let _ = writeln!(t, "{id}: {}", v.join("; "));
        }
    }
    let _ = writeln!(t, "{} entries, {bad} with violations", entries.len());
    r.text = t;
    Ok(r)
}
