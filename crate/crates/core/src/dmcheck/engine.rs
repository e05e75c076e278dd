use crate::algebra::{Polynomial, RationalPoint, RingSpec};
use crate::groebner::{mu_at_point, reduction_number, Ideal};
use crate::series::{truncated_content, TruncatedSeries, UnitTailSeries};

use super::report::{CertificateRecord, DmReport, ExponentSource, TrailEntry, Verdict, REPORT_SCHEMA};
use super::DmError;

/// Knobs for [`dm_check_with`].
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Attach lift certificates for at most this many generators of the left side.
    pub max_certificates: usize,
    pub exponent_source: ExponentSource,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_certificates: 8,
            exponent_source: ExponentSource::User,
        }
    }
}

/// `mu(c(g)_m)` at the maximal ideal of `pt`.
///
/// This is the exponent the main theorem asks for when `m` dominates every other
/// maximal ideal, e.g. when `c(g)` is generated by forms and `pt` is the origin.
/// Otherwise pair it with [`generator_count_bound`], which bounds `mu` everywhere.
pub fn dm_exponent(g: &UnitTailSeries, pt: &RationalPoint) -> Result<u32, DmError> {
    if g.is_zero() {
        return Err(DmError::ZeroSeries);
    }
    Ok(mu_at_point(&g.content(), pt)? as u32)
}

/// Size of an irredundant generating set of `c(g)`, an upper bound for `mu(c(g)_m)` at
/// every maximal ideal.
pub fn generator_count_bound(g: &UnitTailSeries) -> Result<u32, DmError> {
    let mut gens: Vec<Polynomial> = g.content().gens().to_vec();
    if gens.is_empty() {
        return Err(DmError::ZeroSeries);
    }
    let mut i = 0;
    while i < gens.len() {
        let rest = Ideal::new(g.ring(), gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()))?;
        if rest.contains(&gens[i])? {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(gens.len() as u32)
}

/// Exponent for an unattended check: `mu` at the origin when every content generator
/// is a form (the origin then dominates), the generator-count bound otherwise.
pub fn resolve_exponent(g: &UnitTailSeries) -> Result<(u32, ExponentSource), DmError> {
    let homogeneous = g.terms().iter().all(|t| t.a.is_homogeneous());
    if homogeneous {
        let origin = RationalPoint::origin(g.ring());
        Ok((dm_exponent(g, &origin)?, ExponentSource::MuAtPoint))
    } else {
        Ok((generator_count_bound(g)?, ExponentSource::GeneratorCountBound))
    }
}

/// `4 (k + pdeg f + pdeg g) + 8`.
pub fn default_d_max(f: &UnitTailSeries, g: &UnitTailSeries, k: u32) -> usize {
    4 * (k as usize + f.pdeg_upper_bound() + g.pdeg_upper_bound()) + 8
}

/// `I^e`, interreduced after every multiplication to keep generator counts down.
pub(crate) fn compact_power(i: &Ideal, e: u32) -> Ideal {
    let base = i.interreduced();
    let mut acc = Ideal::unit(i.ring());
    for _ in 0..e {
        acc = acc.product(&base).expect("same ring").interreduced();
    }
    acc
}

/// How far the coefficients of `fg` can be trusted.
struct ProductPlan {
    /// Deepest usable truncation.
    d_end: usize,
    /// Truncated content at this depth is the full content `c(fg)`.
    exact_at: Option<usize>,
}

fn product_plan(f: &UnitTailSeries, g: &UnitTailSeries, d_max: usize) -> ProductPlan {
    let exact_at = match (f.polynomial_degree(), g.polynomial_degree()) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let d_end = [Some(d_max), exact_at, f.known_precision(), g.known_precision()]
        .into_iter()
        .flatten()
        .min()
        .expect("d_max is always present");
    ProductPlan { d_end, exact_at }
}

fn product_coeffs(f: &UnitTailSeries, g: &UnitTailSeries, d: usize) -> Result<TruncatedSeries, DmError> {
    Ok(f.expand(d)?.mul(&g.expand(d)?)?)
}

/// Certifies `c(f)^k c(g) = c(f)^(k-1) c(fg)`.
///
/// The left side is exact. The right side is approached through the ascending truncated
/// contents `c_{<=d}(fg)`: containment at some `d` proves it for the full content, and
/// `c(fg) ⊆ c(f) c(g)` gives the reverse inclusion. Failure only refutes when both
/// inputs are polynomials and `d` has reached `deg fg`.
pub fn dm_check(f: &UnitTailSeries, g: &UnitTailSeries, k: u32, d_max: usize) -> Result<DmReport, DmError> {
    dm_check_with(f, g, k, d_max, CheckOptions::default())
}

pub fn dm_check_with(
    f: &UnitTailSeries,
    g: &UnitTailSeries,
    k: u32,
    d_max: usize,
    opts: CheckOptions,
) -> Result<DmReport, DmError> {
    if k == 0 {
        return Err(DmError::ZeroExponent);
    }
    RingSpec::check_same(f.ring(), g.ring())?;
    let ring = f.ring();
    let cf = f.content().interreduced();
    let cg = g.content().interreduced();
    let base = compact_power(&cf, k - 1);
    let lhs = base.product(&cf)?.interreduced().product(&cg)?.interreduced();

    let plan = product_plan(f, g, d_max);
    let d_end = plan.d_end;
    let d_start = (f.pdeg_upper_bound() + g.pdeg_upper_bound()).min(d_end);

    let mut notes = Vec::new();
    let mut d_cert = None;
    let mut rhs = Ideal::zero(ring);
    let mut last_content: Option<Ideal> = None;
    let mut d_reached = d_start;
    // Coefficients of rational units grow with depth, so expand in doubling steps.
    let mut fg = product_coeffs(f, g, (d_start + 4).min(d_end))?;
    for d in d_start..=d_end {
        d_reached = d;
        if d > fg.precision() {
            fg = product_coeffs(f, g, (2 * d).min(d_end))?;
        }
        // A coefficient already in the truncated content leaves the right side unchanged.
        if let Some(prev) = &last_content {
            if prev.contains(&fg.coeffs()[d])? {
                continue;
            }
        }
        let content = truncated_content(&fg, d)?.interreduced();
        rhs = base.product(&content)?;
        last_content = Some(content);
        if rhs.contains_ideal(&lhs)? {
            d_cert = Some(d);
            break;
        }
    }
    let content = match last_content {
        Some(c) => c,
        None => truncated_content(&fg, d_reached)?,
    };
    if rhs.is_zero() && !content.is_zero() {
        rhs = base.product(&content)?;
    }

    // The reverse inclusion: c_{<=d}(fg) ⊆ c(f) c(g).
    let cfcg = cf.product(&cg)?;
    if !cfcg.contains_ideal(&content)? {
        return Err(DmError::Internal(format!(
            "truncated content of fg at depth {d_reached} escapes c(f)c(g)"
        )));
    }

    let verdict = match d_cert {
        Some(_) => Verdict::Verified,
        None if plan.exact_at.is_some_and(|e| d_reached >= e) => {
            if let Some(w) = lhs.gens().iter().find(|p| !rhs.contains(p).unwrap_or(true)) {
                notes.push(format!("witness {w} lies outside the right side"));
            }
            Verdict::Refuted
        }
        None => {
            notes.push(format!("no containment up to depth {d_reached}"));
            Verdict::Inconclusive
        }
    };

    let mut certificates = Vec::new();
    if verdict == Verdict::Verified && lhs.gens().len() <= opts.max_certificates {
        let audit = Ideal::new(ring, rhs.gens().iter().cloned())?;
        for p in lhs.gens() {
            certificates.push(CertificateRecord::from(&audit.lift(p)?));
        }
    }

    Ok(DmReport {
        schema: REPORT_SCHEMA.to_string(),
        ring: ring.to_string(),
        exponent: k,
        exponent_source: opts.exponent_source,
        d_cert,
        d_max,
        verdict,
        min_exponent: None,
        reduction_number: None,
        trail: Vec::new(),
        lhs_fingerprint: lhs.fingerprint(),
        rhs_fingerprint: rhs.fingerprint(),
        certificates,
        seed: None,
        notes,
    })
}

/// Least `k <= k_max` at which [`dm_check`] verifies.
pub fn dm_min_exponent(
    f: &UnitTailSeries,
    g: &UnitTailSeries,
    k_max: u32,
    d_max: usize,
) -> Result<Option<u32>, DmError> {
    let trail = exponent_trail(f, g, k_max, d_max, true)?;
    Ok(trail.last().filter(|t| t.verdict == Verdict::Verified).map(|t| t.exponent))
}

/// Verdicts at `k = 1, 2, ..` up to `k_max`, stopping after the first verified one
/// when `stop_at_verified` is set.
pub fn exponent_trail(
    f: &UnitTailSeries,
    g: &UnitTailSeries,
    k_max: u32,
    d_max: usize,
    stop_at_verified: bool,
) -> Result<Vec<TrailEntry>, DmError> {
    let opts = CheckOptions {
        max_certificates: 0,
        ..CheckOptions::default()
    };
    let mut trail = Vec::new();
    for k in 1..=k_max {
        let r = dm_check_with(f, g, k, d_max, opts)?;
        trail.push(TrailEntry {
            exponent: k,
            verdict: r.verdict,
            d_cert: r.d_cert,
        });
        if stop_at_verified && r.is_verified() {
            break;
        }
    }
    Ok(trail)
}

/// With `c(f) = R`, the identity at exponent one reads `c(fg) = c(g)`.
pub fn unit_content_identity_check(
    f: &UnitTailSeries,
    g: &UnitTailSeries,
    d_max: usize,
) -> Result<DmReport, DmError> {
    let cf = f.content();
    if !cf.is_unit() {
        return Err(DmError::ContentNotUnit(cf.to_string()));
    }
    let mut report = dm_check(f, g, 1, d_max)?;
    report.notes.push("c(f) is the unit ideal; exponent 1 states c(fg) = c(g)".into());
    Ok(report)
}

/// Verifies the identity at `k`, then that `c(fg)` is a reduction of `c(f) c(g)` with
/// reduction number at most `k - 1`.
///
/// The truncated content at the certified depth stands in for `c(fg)`: it already
/// satisfies `I^k ⊆ J I^(k-1)` by the certificate.
pub fn reduction_corollary_check(
    f: &UnitTailSeries,
    g: &UnitTailSeries,
    k: u32,
    d_max: usize,
) -> Result<DmReport, DmError> {
    let opts = CheckOptions {
        max_certificates: 0,
        ..CheckOptions::default()
    };
    let mut report = dm_check_with(f, g, k, d_max, opts)?;
    let Some(d_cert) = report.d_cert else {
        return Err(DmError::NotVerified(report.verdict));
    };
    let plan = product_plan(f, g, d_max);
    let depth = plan.exact_at.map_or(d_cert, |e| e.min(plan.d_end));
    let j = truncated_content(&product_coeffs(f, g, depth)?, depth)?;
    let i = f.content().product(&g.content())?;
    let r = reduction_number(&j, &i, k - 1)?;
    match r {
        Some(r) => {
            report.reduction_number = Some(r);
            Ok(report)
        }
        None => Err(DmError::Internal(format!(
            "reduction number exceeds {} although the identity verified",
            k - 1
        ))),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exprio::parse_poly;
    use crate::series::{UnitSeries, UnitTerm};

    fn ring() -> Arc<RingSpec> {
        RingSpec::rational(&["u", "v"])
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &ring()).unwrap()
    }

    fn poly(cs: &[&str]) -> UnitTailSeries {
        UnitTailSeries::from_polynomial(&ring(), cs.iter().map(|c| p(c)).collect()).unwrap()
    }

    fn rush() -> (UnitTailSeries, UnitTailSeries) {
        let r = ring();
        let g = UnitTailSeries::new(
            &r,
            16,
            vec![
                UnitTerm { a: p("u"), j: 0, unit: UnitSeries::one(&r) },
                UnitTerm { a: p("v"), j: 1, unit: UnitSeries::geometric(&r) },
            ],
        )
        .unwrap();
        (poly(&["v", "1"]), g)
    }

    #[test]
    fn exponents() {
        let (_, g) = rush();
        let origin = RationalPoint::origin(&ring());
        assert_eq!(dm_exponent(&g, &origin).unwrap(), 2);
        assert_eq!(dm_exponent(&poly(&["u*v", "u^2*v"]), &origin).unwrap(), 1);
        assert!(matches!(dm_exponent(&poly(&[]), &origin), Err(DmError::ZeroSeries)));
        assert_eq!(generator_count_bound(&poly(&["u", "v", "u + v"])).unwrap(), 2);
        assert_eq!(resolve_exponent(&g).unwrap(), (2, ExponentSource::MuAtPoint));
        assert_eq!(
            resolve_exponent(&poly(&["u + 1", "v"])).unwrap(),
            (2, ExponentSource::GeneratorCountBound)
        );
    }

    #[test]
    fn rush_pair_verifies() {
        let (f, g) = rush();
        let r = dm_check(&f, &g, 2, default_d_max(&f, &g, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.d_cert.unwrap() <= 2);
        assert!(r.certificates.iter().all(|c| c.valid));
        assert!(!r.certificates.is_empty());
        assert_eq!(dm_min_exponent(&f, &g, 3, 16).unwrap(), Some(1));
    }

    #[test]
    fn gauss_failure() {
        let f = poly(&["u", "v"]);
        let g = poly(&["v", "u"]);
        let r1 = dm_check(&f, &g, 1, 16).unwrap();
        assert_eq!(r1.verdict, Verdict::Refuted);
        assert!(r1.d_cert.is_none());
        assert_eq!(dm_check(&f, &g, 2, 16).unwrap().verdict, Verdict::Verified);
        assert_eq!(dm_min_exponent(&f, &g, 3, 16).unwrap(), Some(2));
        assert_eq!(reduction_corollary_check(&f, &g, 2, 16).unwrap().reduction_number, Some(1));
        assert!(matches!(reduction_corollary_check(&f, &g, 1, 16), Err(DmError::NotVerified(Verdict::Refuted))));
    }

    #[test]
    fn square_of_linear_form() {
        let f = poly(&["u", "v"]);
        assert_eq!(dm_min_exponent(&f, &f, 3, 16).unwrap(), Some(1));
        assert_eq!(reduction_corollary_check(&f, &f, 2, 16).unwrap().reduction_number, Some(0));
    }

    #[test]
    fn zero_exponent_rejected() {
        let (f, g) = rush();
        assert!(matches!(dm_check(&f, &g, 0, 8), Err(DmError::ZeroExponent)));
    }

    #[test]
    fn unit_content() {
        let (f, g) = rush();
        assert!(unit_content_identity_check(&f, &g, 16).unwrap().is_verified());
        let one = poly(&["1"]);
        assert!(unit_content_identity_check(&one, &g, 16).unwrap().is_verified());
        let r = unit_content_identity_check(&poly(&["1", "u"]), &poly(&["u", "v"]), 16).unwrap();
        assert!(r.is_verified());
        assert!(matches!(
            unit_content_identity_check(&g, &f, 16),
            Err(DmError::ContentNotUnit(_))
        ));
        assert_eq!(reduction_corollary_check(&f, &g, 2, 16).unwrap().reduction_number, Some(0));
    }

    #[test]
    fn truncated_inputs_stay_inconclusive() {
        // Units known only to low precision cannot certify a failing exponent.
        let r = ring();
        let f = UnitTailSeries::new(
            &r,
            3,
            vec![
                UnitTerm { a: p("u"), j: 0, unit: UnitSeries::one(&r) },
                UnitTerm {
                    a: p("v"),
                    j: 1,
                    unit: UnitSeries::truncated(TruncatedSeries::new(&r, vec![p("1"), p("0")]).unwrap()).unwrap(),
                },
            ],
        )
        .unwrap();
        let g = poly(&["v", "u"]);
        let rep = dm_check(&f, &g, 1, 16).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
        assert!(dm_check(&f, &g, 2, 16).unwrap().is_verified());
    }
}
