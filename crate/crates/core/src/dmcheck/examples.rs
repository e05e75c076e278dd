use serde::{Deserialize, Serialize};

use crate::algebra::{Field, MonomialOrder, Polynomial, RationalPoint, RingSpec};
use crate::groebner::{Ideal, MembershipCertificate};
use crate::series::{UnitSeries, UnitTailSeries, UnitTerm};

use super::engine::{compact_power, dm_check_with, dm_exponent, CheckOptions};
use super::report::{CertificateRecord, DmReport, ExponentSource};
use super::DmError;

/// The generic pair `f = sum a_i X^i`, `g = sum b_i X^i` of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub k: u32,
    pub ring: String,
    /// A generator of `(c(f)c(g))^k` outside `(c(f)c(g))^(k-1) c(fg)`.
    pub witness: Option<String>,
    /// Its normal form modulo the right side; nonzero certifies non-membership.
    pub witness_normal_form: Option<String>,
    pub inequality_certified: bool,
    /// `mu(c(g))` at the origin, the exponent the main theorem uses.
    pub contrast_exponent: u32,
    pub contrast: DmReport,
}

fn generic_ring(k: u32, field: Field) -> Result<std::sync::Arc<RingSpec>, DmError> {
    let vars: Vec<String> = (0..=k)
        .map(|i| format!("a{i}"))
        .chain((0..=k).map(|i| format!("b{i}")))
        .collect();
    Ok(RingSpec::new(vars, field, MonomialOrder::Grevlex)?)
}

/// `(c(f)c(g))^k != (c(f)c(g))^(k-1) c(fg)` for the generic degree-`k` pair, and the
/// identity restored at exponent `mu(c(g)) = k + 1`.
pub fn generic_counterexample(k: u32, field: Field) -> Result<CounterexampleReport, DmError> {
    if k == 0 {
        return Err(DmError::ZeroExponent);
    }
    let ring = generic_ring(k, field)?;
    let n = k as usize + 1;
    let f = UnitTailSeries::from_polynomial(&ring, (0..n).map(|i| Polynomial::var(&ring, i)).collect())?;
    let g = UnitTailSeries::from_polynomial(&ring, (0..n).map(|i| Polynomial::var(&ring, n + i)).collect())?;

    let cfcg = f.content().product(&g.content())?;
    let fg = f.expand(2 * k as usize)?.mul(&g.expand(2 * k as usize)?)?;
    let cfg = Ideal::new(&ring, fg.coeffs().iter().cloned())?;
    let rhs = compact_power(&cfcg, k - 1).product(&cfg)?;
    // Generators of the left side in their natural product order.
    let lhs = cfcg.power(k);
    let mut witness = None;
    for p in lhs.gens() {
        let nf = rhs.normal_form(p)?;
        if !nf.is_zero() {
            witness = Some((p.clone(), nf));
            break;
        }
    }

    let contrast_exponent = dm_exponent(&g, &RationalPoint::origin(&ring))?;
    let opts = CheckOptions {
        max_certificates: 0,
        exponent_source: ExponentSource::MuAtPoint,
    };
    let contrast = dm_check_with(&f, &g, contrast_exponent, 2 * k as usize, opts)?;

    Ok(CounterexampleReport {
        k,
        ring: ring.to_string(),
        inequality_certified: witness.is_some(),
        witness: witness.as_ref().map(|(p, _)| p.to_string()),
        witness_normal_form: witness.as_ref().map(|(_, nf)| nf.to_string()),
        contrast_exponent,
        contrast,
    })
}

/// Recomputation of the `k[u,v]` pair `f = v + X`, `g = u + v X / (1 - X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RushReport {
    /// Coefficients of `fg` through `X^4`.
    pub coefficients: Vec<String>,
    pub coefficients_match: bool,
    /// `c(fg) = c(g) = (u, v)`.
    pub contents_equal: bool,
    pub content_fg: String,
    pub content_g: String,
    /// The two printed cofactor identities over `(uv, u + v^2, v + v^2)`.
    pub printed_certificates: Vec<CertificateRecord>,
    /// Certificates for `v` and `u - v` found by lifting.
    pub lifted_certificates: Vec<CertificateRecord>,
    pub passed: bool,
}

pub fn rush_example_check() -> Result<RushReport, DmError> {
    let ring = RingSpec::rational(&["u", "v"]);
    let parse = |s: &str| crate::exprio::parse_poly(s, &ring).expect("fixed input");
    let f = UnitTailSeries::from_polynomial(&ring, vec![parse("v"), parse("1")])?;
    let g = UnitTailSeries::new(
        &ring,
        crate::series::DEFAULT_PRECISION,
        vec![
            UnitTerm { a: parse("u"), j: 0, unit: UnitSeries::one(&ring) },
            UnitTerm { a: parse("v"), j: 1, unit: UnitSeries::geometric(&ring) },
        ],
    )?;

    let fg = f.expand(4)?.mul(&g.expand(4)?)?;
    let expected: Vec<Polynomial> = ["u*v", "u + v^2", "v + v^2", "v + v^2", "v + v^2"]
        .iter()
        .map(|s| parse(s))
        .collect();
    let coefficients_match = fg.coeffs() == expected.as_slice();

    // c_{<=2}(fg) ⊆ c(fg) ⊆ c(f)c(g) = c(g), so equality of the outer two pins c(fg).
    let c2 = Ideal::new(&ring, fg.coeffs()[..=2].iter().cloned())?;
    let cg = g.content();
    let uv = Ideal::new(&ring, [parse("u"), parse("v")])?;
    let upper = f.content().product(&cg)?;
    let contents_equal = c2.ideal_equal(&cg)? && cg.ideal_equal(&uv)? && upper.ideal_equal(&cg)?;

    let gens = expected[..3].to_vec();
    let printed = [
        MembershipCertificate {
            target: parse("v"),
            generators: gens.clone(),
            cofactors: vec![parse("-1"), parse("v"), parse("1 - v")],
        },
        MembershipCertificate {
            target: parse("u - v"),
            generators: gens.clone(),
            cofactors: vec![parse("0"), parse("1"), parse("-1")],
        },
    ];
    let printed_certificates: Vec<CertificateRecord> = printed.iter().map(CertificateRecord::from).collect();
    let lifted_certificates = ["v", "u - v"]
        .iter()
        .map(|t| c2.lift(&parse(t)).map(|c| CertificateRecord::from(&c)))
        .collect::<Result<Vec<_>, _>>()?;

    let passed = coefficients_match
        && contents_equal
        && printed_certificates.iter().chain(&lifted_certificates).all(|c| c.valid);
    Ok(RushReport {
        coefficients: fg.coeffs().iter().map(ToString::to_string).collect(),
        coefficients_match,
        contents_equal,
        content_fg: c2.to_string(),
        content_g: cg.to_string(),
        printed_certificates,
        lifted_certificates,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmcheck::Verdict;

    #[test]
    fn rush() {
        let r = rush_example_check().unwrap();
        assert!(r.passed);
        assert_eq!(r.coefficients, ["u*v", "v^2 + u", "v^2 + v", "v^2 + v", "v^2 + v"]);
        assert_eq!(r.printed_certificates[0].cofactors, ["-1", "v", "-v + 1"]);
    }

    #[test]
    fn generic_k1() {
        let r = generic_counterexample(1, Field::Rational).unwrap();
        assert!(r.inequality_certified);
        assert_eq!(r.witness.as_deref(), Some("a0*b1"));
        assert_eq!(r.contrast_exponent, 2);
        assert_eq!(r.contrast.verdict, Verdict::Verified);
        assert!(generic_counterexample(0, Field::Rational).is_err());
    }
}
