//! Seeded random unit-tail pairs and the batch runner over them.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, RationalPoint, RingSpec};
use crate::series::{UnitSeries, UnitTailSeries, UnitTerm, DEFAULT_PRECISION};

use super::engine::{default_d_max, dm_check_with, dm_exponent, reduction_corollary_check, CheckOptions};
use super::report::{ExponentSource, Verdict};
use super::DmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorpusRing {
    /// `Q[u, v]`
    #[serde(rename = "Q[u,v]")]
    QUv,
    /// `F_101[x, y, z]`
    #[serde(rename = "F101[x,y,z]")]
    F101Xyz,
}

impl CorpusRing {
    pub fn ring(self) -> Arc<RingSpec> {
        match self {
            CorpusRing::QUv => RingSpec::rational(&["u", "v"]),
            CorpusRing::F101Xyz => RingSpec::new(
                ["x", "y", "z"],
                Field::prime(101).expect("101 is prime"),
                MonomialOrder::Grevlex,
            )
            .expect("valid variables"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorpusRing::QUv => "Q[u,v]",
            CorpusRing::F101Xyz => "F101[x,y,z]",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusPair {
    pub id: usize,
    pub ring: CorpusRing,
    pub f: UnitTailSeries,
    pub g: UnitTailSeries,
}

/// Random form of degree `deg` with one to three terms and small coefficients.
fn random_form(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>, deg: u32) -> Polynomial {
    let n = ring.nvars();
    loop {
        let terms = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut exps = vec![0u32; n];
                for _ in 0..deg {
                    exps[rng.gen_range(0..n)] += 1;
                }
                (Monomial::new(exps), small_scalar(rng, ring))
            })
            .collect();
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn small_scalar(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>) -> crate::algebra::FieldElement {
    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    ring.field().from_i64(c)
}

/// A polynomial of degree at most one, possibly zero.
fn random_affine(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>) -> Polynomial {
    let mut p = Polynomial::zero(ring);
    if rng.gen_bool(0.5) {
        p = Polynomial::constant(ring, small_scalar(rng, ring));
    }
    if rng.gen_bool(0.7) {
        p = &p + &random_form(rng, ring, 1);
    }
    p
}

/// One of `1`, `1/(1-X)`, a random polynomial unit, or the inverse of one.
fn random_unit(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>) -> UnitSeries {
    match rng.gen_range(0..4) {
        0 => UnitSeries::one(ring),
        1 => UnitSeries::geometric(ring),
        kind => {
            let mut coeffs = vec![Polynomial::constant(ring, small_scalar(rng, ring))];
            for _ in 0..rng.gen_range(1..=2) {
                coeffs.push(random_affine(rng, ring));
            }
            let one = vec![Polynomial::one(ring)];
            let unit = if kind == 2 {
                UnitSeries::ratio(ring, coeffs, one)
            } else {
                UnitSeries::ratio(ring, one, coeffs)
            };
            unit.expect("scalar constant term")
        }
    }
}

/// One to `max_terms` terms at distinct exponents `<= max_j`, each coefficient a form of
/// degree one or two, each unit from [`random_unit`].
pub fn random_series(rng: &mut ChaCha8Rng, ring: &Arc<RingSpec>, max_terms: usize, max_j: usize) -> UnitTailSeries {
    let count = rng.gen_range(1..=max_terms.min(max_j + 1));
    let mut js = sample(rng, max_j + 1, count).into_vec();
    js.sort_unstable();
    let terms = js
        .into_iter()
        .map(|j| {
            let deg = rng.gen_range(1..=2);
            UnitTerm {
                a: random_form(rng, ring, deg),
                j,
                unit: random_unit(rng, ring),
            }
        })
        .collect();
    UnitTailSeries::new(ring, DEFAULT_PRECISION, terms).expect("distinct exponents in range")
}

/// `count` pairs over `ring`, reproducible from `seed`.
pub fn generate_corpus(seed: u64, count: usize, ring: CorpusRing) -> Vec<CorpusPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ring.ring();
    (0..count)
        .map(|id| CorpusPair {
            id,
            ring,
            f: random_series(&mut rng, &r, 4, 3),
            g: random_series(&mut rng, &r, 4, 3),
        })
        .collect()
}

/// Pairs whose `f` has a nonzero scalar among its coefficients, so `c(f) = R`.
pub fn generate_unit_content_pairs(seed: u64, count: usize, ring: CorpusRing) -> Vec<CorpusPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ring.ring();
    (0..count)
        .map(|id| {
            let f = random_series(&mut rng, &r, 3, 3);
            let free = (0..=4).find(|j| f.terms().iter().all(|t| t.j != *j)).expect("at most 3 terms");
            let scalar = Polynomial::constant(&r, small_scalar(&mut rng, &r));
            let f = f.insert_term(scalar, free, random_unit(&mut rng, &r)).expect("free exponent");
            CorpusPair {
                id,
                ring,
                f,
                g: random_series(&mut rng, &r, 4, 3),
            }
        })
        .collect()
}

/// Random series `f` against polynomials `g` of degree exactly `k - 1`.
pub fn generate_ggp_pairs(seed: u64, k: u32, count: usize, ring: CorpusRing) -> Vec<CorpusPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(k) << 32));
    let r = ring.ring();
    (0..count)
        .map(|id| {
            let f = random_series(&mut rng, &r, 4, 3);
            let top = k as usize - 1;
            let coeffs = (0..=top)
                .map(|j| {
                    if j == top || rng.gen_bool(0.7) {
                        let deg = rng.gen_range(1..=2);
                        random_form(&mut rng, &r, deg)
                    } else {
                        Polynomial::zero(&r)
                    }
                })
                .collect();
            let g = UnitTailSeries::from_polynomial(&r, coeffs).expect("same ring");
            CorpusPair { id, ring, f, g }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub id: usize,
    pub ring: CorpusRing,
    pub f: String,
    pub g: String,
    pub k: u32,
    pub d_cert: Option<usize>,
    pub d_max: usize,
    pub verdict: Verdict,
    /// Reduction number of the certified `c(fg)` approximant in `c(f)c(g)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction_number: Option<u32>,
    /// Whether the check also verified at `k + 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_at_k_plus_one: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub rows: Vec<CorpusRow>,
    pub verified: usize,
    pub total: usize,
}

impl CorpusSummary {
    pub fn all_verified(&self) -> bool {
        self.verified == self.total
    }
}

/// What to run per pair beyond the identity at `k = mu(c(g))` at the origin.
#[derive(Debug, Clone, Copy, Default)]
pub struct CorpusOptions {
    pub corollary: bool,
    pub monotonicity: bool,
    /// Worker threads; `0` picks the available parallelism.
    pub threads: usize,
}

fn run_pair(pair: &CorpusPair, opts: CorpusOptions) -> Result<CorpusRow, DmError> {
    let origin = RationalPoint::origin(pair.f.ring());
    let k = dm_exponent(&pair.g, &origin)?;
    let d_max = default_d_max(&pair.f, &pair.g, k);
    let check = CheckOptions {
        max_certificates: 0,
        exponent_source: ExponentSource::MuAtPoint,
    };
    let report = dm_check_with(&pair.f, &pair.g, k, d_max, check)?;
    let mut row = CorpusRow {
        id: pair.id,
        ring: pair.ring,
        f: pair.f.to_string(),
        g: pair.g.to_string(),
        k,
        d_cert: report.d_cert,
        d_max,
        verdict: report.verdict,
        reduction_number: None,
        verified_at_k_plus_one: None,
    };
    if report.is_verified() {
        if opts.corollary {
            row.reduction_number = reduction_corollary_check(&pair.f, &pair.g, k, d_max)?.reduction_number;
        }
        if opts.monotonicity {
            let next = dm_check_with(&pair.f, &pair.g, k + 1, default_d_max(&pair.f, &pair.g, k + 1), check)?;
            row.verified_at_k_plus_one = Some(next.is_verified());
        }
    }
    Ok(row)
}

/// Runs every pair; rows come back in input order regardless of threading.
pub fn run_corpus(seed: u64, pairs: &[CorpusPair], opts: CorpusOptions) -> Result<CorpusSummary, DmError> {
    let threads = match opts.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    }
    .min(pairs.len().max(1));
    let rows: Vec<CorpusRow> = if threads <= 1 {
        pairs.iter().map(|p| run_pair(p, opts)).collect::<Result<_, _>>()?
    } else {
        let chunk = pairs.len().div_ceil(threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = pairs
                .chunks(chunk)
                .map(|c| s.spawn(move || c.iter().map(|p| run_pair(p, opts)).collect::<Result<Vec<_>, _>>()))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("corpus worker panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?
        .into_iter()
        .flatten()
        .collect()
    };
    let verified = rows.iter().filter(|r| r.verdict == Verdict::Verified).count();
    Ok(CorpusSummary {
        seed,
        total: rows.len(),
        verified,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        let a = generate_corpus(7, 5, CorpusRing::QUv);
        let b = generate_corpus(7, 5, CorpusRing::QUv);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.f, y.f);
            assert_eq!(x.g, y.g);
        }
        for p in &a {
            assert!(p.f.terms().len() <= 4 && p.f.terms().iter().all(|t| t.j <= 3));
            assert!(p.g.terms().iter().all(|t| t.a.is_homogeneous() && t.a.total_degree() <= Some(2)));
        }
    }

    #[test]
    fn unit_content_pairs_have_unit_content() {
        for p in generate_unit_content_pairs(3, 10, CorpusRing::F101Xyz) {
            assert!(p.f.content().is_unit());
        }
    }

    #[test]
    fn ggp_pairs_have_the_right_degree() {
        for k in 1..=3 {
            for p in generate_ggp_pairs(5, k, 4, CorpusRing::QUv) {
                assert_eq!(p.g.polynomial_degree(), Some(k as usize - 1));
            }
        }
    }

    #[test]
    fn small_corpus_verifies() {
        let pairs = generate_corpus(42, 6, CorpusRing::QUv);
        let opts = CorpusOptions {
            corollary: true,
            monotonicity: true,
            threads: 1,
        };
        let summary = run_corpus(42, &pairs, opts).unwrap();
        assert!(summary.all_verified(), "{summary:#?}");
        for row in &summary.rows {
            assert!(row.reduction_number.unwrap() < row.k);
            assert_eq!(row.verified_at_k_plus_one, Some(true));
        }
    }
}
