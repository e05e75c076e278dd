//! Browser bindings. Every export takes plain strings and returns a JSON string: either
//! the result or `{"error": "..."}`, so the page never has to catch exceptions.

use std::sync::Arc;

use dmkit::dmcheck::{default_d_max, dm_check_with, resolve_exponent, CheckOptions, ExponentSource};
use dmkit::exprio::{dump_report, infer_vars, load_series, parse_field, parse_poly_list, parse_series_expr};
use dmkit::groebner::{minimal_generators_at, mu_at_point, Ideal};
use dmkit::{MonomialOrder, RationalPoint, RingSpec, UnitTailSeries};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Upper bound on the truncation depth the page may request.
const MAX_DEPTH: usize = 64;

fn ring_for(vars: &str, field: &str, texts: &[&str]) -> Result<Arc<RingSpec>, String> {
    let names: Vec<String> = if vars.trim().is_empty() {
        infer_vars(texts.iter().copied())
    } else {
        vars.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    };
    let field = parse_field(if field.trim().is_empty() { "Q" } else { field.trim() })?;
    RingSpec::new(names, field, MonomialOrder::Grevlex).map_err(|e| e.to_string())
}

fn is_doc(src: &str) -> bool {
    src.trim_start().starts_with('{')
}

/// Loads series given as text in `X` or as JSON documents. Text inputs share a ring:
/// `vars` if given, else the ring of a document input, else the inferred variables.
fn load(srcs: &[&str], vars: &str, field: &str) -> Result<Vec<UnitTailSeries>, String> {
    let docs = srcs
        .iter()
        .map(|s| is_doc(s).then(|| load_series(s).map_err(|e| e.to_string())).transpose())
        .collect::<Result<Vec<_>, _>>()?;
    let texts: Vec<&str> = srcs.iter().copied().filter(|s| !is_doc(s)).collect();
    let ring = match docs.iter().flatten().next() {
        Some(d) if vars.trim().is_empty() => d.ring().clone(),
        _ => ring_for(vars, field, &texts)?,
    };
    srcs.iter()
        .zip(docs)
        .enumerate()
        .map(|(i, (s, d))| match d {
            Some(d) => Ok(d),
            None => parse_series_expr(s.trim(), &ring).map_err(|e| format!("series {}: {e}", i + 1)),
        })
        .collect()
}

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn content_impl(series: &str, vars: &str, field: &str) -> Result<String, String> {
    let f = load(&[series], vars, field)?.remove(0);
    let ring = f.ring();
    let c = f.content();
    Ok(json!({
        "ring": ring.to_string(),
        "series": f.to_string(),
        "content": c.interreduced().gens().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "is_unit": c.is_unit(),
    })
    .to_string())
}

fn dm_impl(f: &str, g: &str, k: u32, d_max: u32, vars: &str, field: &str) -> Result<String, String> {
    let mut inputs = load(&[f, g], vars, field)?;
    let g = inputs.pop().expect("two inputs");
    let f = inputs.pop().expect("two inputs");
    let (k, source) = match k {
        0 => resolve_exponent(&g).map_err(|e| e.to_string())?,
        k => (k, ExponentSource::User),
    };
    let d_max = match d_max {
        0 => default_d_max(&f, &g, k),
        d => d as usize,
    }
    .min(MAX_DEPTH);
    let opts = CheckOptions { max_certificates: 4, exponent_source: source };
    let report = dm_check_with(&f, &g, k, d_max, opts).map_err(|e| e.to_string())?;
    Ok(dump_report(&report))
}

fn mu_impl(gens: &str, point: &str, vars: &str, field: &str) -> Result<String, String> {
    let ring = ring_for(vars, field, &[gens])?;
    let polys = parse_poly_list(gens, &ring).map_err(|e| format!("generators: {e}"))?;
    let ideal = Ideal::new(&ring, polys).map_err(|e| e.to_string())?;
    let pt = if point.trim().is_empty() {
        RationalPoint::origin(&ring)
    } else {
        let scalars = RingSpec::new(Vec::<String>::new(), ring.field(), ring.order()).map_err(|e| e.to_string())?;
        let coords = parse_poly_list(point, &scalars)
            .map_err(|e| format!("point: {e}"))?
            .into_iter()
            .map(|p| p.constant_coeff())
            .collect();
        RationalPoint::new(&ring, coords).map_err(|e| format!("point: {e}"))?
    };
    let mu = mu_at_point(&ideal, &pt).map_err(|e| e.to_string())?;
    let kept = minimal_generators_at(&ideal, &pt).map_err(|e| e.to_string())?;
    Ok(json!({
        "ring": ring.to_string(),
        "mu": mu,
        "minimal_generators": kept.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
    .to_string())
}

/// Content ideal of a series: a polynomial in `X` such as `u + v*X`, or a JSON document.
#[wasm_bindgen]
pub fn content(series: &str, vars: &str, field: &str) -> String {
    content_impl(series, vars, field).unwrap_or_else(error)
}

/// The identity check; `k = 0` picks the exponent, `d_max = 0` the default depth.
#[wasm_bindgen]
pub fn dm_check(f: &str, g: &str, k: u32, d_max: u32, vars: &str, field: &str) -> String {
    dm_impl(f, g, k, d_max, vars, field).unwrap_or_else(error)
}

/// Local minimal generator count; an empty point means the origin.
#[wasm_bindgen]
pub fn mu(gens: &str, point: &str, vars: &str, field: &str) -> String {
    mu_impl(gens, point, vars, field).unwrap_or_else(error)
}
