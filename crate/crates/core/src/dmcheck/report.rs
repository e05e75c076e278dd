use serde::{Deserialize, Serialize};

use crate::groebner::MembershipCertificate;

/// Schema tag written into every report.
pub const REPORT_SCHEMA: &str = "dm-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExponentSource {
    #[serde(rename = "user")]
    User,
    #[serde(rename = "mu_at_point")]
    MuAtPoint,
    #[serde(rename = "generator-count bound")]
    GeneratorCountBound,
}

/// A membership certificate rendered as text, with the outcome of re-expanding it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub target: String,
    pub generators: Vec<String>,
    pub cofactors: Vec<String>,
    pub valid: bool,
}

impl From<&MembershipCertificate> for CertificateRecord {
    fn from(c: &MembershipCertificate) -> Self {
        CertificateRecord {
            target: c.target.to_string(),
            generators: c.generators.iter().map(ToString::to_string).collect(),
            cofactors: c.cofactors.iter().map(ToString::to_string).collect(),
            valid: c.verify(),
        }
    }
}

/// Verdict of the check at one exponent, kept when several exponents were tried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailEntry {
    pub exponent: u32,
    pub verdict: Verdict,
    pub d_cert: Option<usize>,
}

/// Outcome of one check of `c(f)^k c(g) = c(f)^(k-1) c(fg)`.
///
/// `verified` always comes with `d_cert`: the truncation depth at which
/// `c(f)^k c(g) ⊆ c(f)^(k-1) c_{<=d}(fg)` was established. `refuted` only appears
/// when both series are polynomials, so every content involved is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmReport {
    pub schema: String,
    pub ring: String,
    pub exponent: u32,
    pub exponent_source: ExponentSource,
    pub d_cert: Option<usize>,
    pub d_max: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_exponent: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction_number: Option<u32>,
    /// Checks at other exponents, smallest first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trail: Vec<TrailEntry>,
    pub lhs_fingerprint: String,
    pub rhs_fingerprint: String,
    #[serde(default)]
    pub certificates: Vec<CertificateRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DmReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }
}
