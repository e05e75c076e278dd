//! Series written as polynomials in the series variable `X`, e.g. `v + X` or `u + v*X`.

use std::sync::Arc;

use crate::algebra::{is_identifier, Monomial, Polynomial, RingSpec, SERIES_VAR};
use crate::series::UnitTailSeries;

use super::{parse_poly, ParseError};

/// Parses `src` over `ring[X]` and splits it by powers of `X`.
pub fn parse_series_expr(src: &str, ring: &Arc<RingSpec>) -> Result<UnitTailSeries, ParseError> {
    let extended = ring.with_series_var();
    let p = parse_poly(src, &extended)?;
    let n = ring.nvars();
    let mut by_power: Vec<Vec<(Monomial, crate::algebra::FieldElement)>> = Vec::new();
    for (m, c) in p.terms() {
        let j = m.exps()[n] as usize;
        if by_power.len() <= j {
            by_power.resize(j + 1, Vec::new());
        }
        by_power[j].push((Monomial::new(m.exps()[..n].to_vec()), c.clone()));
    }
    let coeffs = by_power.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect();
    Ok(UnitTailSeries::from_polynomial(ring, coeffs).expect("coefficients built over `ring`"))
}

/// Identifiers other than `X` in the given expressions, sorted and deduplicated.
pub fn infer_vars<'a>(srcs: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut vars: Vec<String> = srcs
        .into_iter()
        .flat_map(|s| {
            s.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .filter(|w| is_identifier(w) && *w != SERIES_VAR)
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .collect();
    vars.sort();
    vars.dedup();
    vars
}
