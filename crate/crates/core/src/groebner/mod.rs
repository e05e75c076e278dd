//! Ideals of `k[x1..xn]` and the decision procedures built on reduced Gröbner bases.

mod buchberger;
mod local;
mod reduction;

use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{AlgebraError, Polynomial, RingSpec};

pub use local::{minimal_generators_at, mu_at_point};
pub use reduction::reduction_number;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is not a member of the ideal")]
    NotMember(String),
    #[error("the zero ideal has no local generators")]
    ZeroIdeal,
    #[error("J is not contained in I")]
    NotSubideal,
}

/// A finitely generated ideal. The reduced Gröbner basis is computed on first use and
/// shared by clones made afterwards.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<RingSpec>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
    tracked: OnceLock<Arc<TrackedBasis>>,
}

struct TrackedBasis {
    basis: Vec<Polynomial>,
    cofactors: Vec<Vec<Polynomial>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("gens", &self.gens_string()).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gens_string())
    }
}

impl Ideal {
    /// Ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Arc<RingSpec>, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self, IdealError> {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            RingSpec::check_same(ring, g.ring())?;
        }
        Ok(Self::from_checked(ring, gens))
    }

    fn from_checked(ring: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
            tracked: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Self::from_checked(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Self {
        Self::from_checked(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.groebner_basis(), [g] if g.as_scalar().is_some())
    }

    fn gens_string(&self) -> String {
        if self.gens.is_empty() {
            return "0".into();
        }
        self.gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }

    /// The reduced Gröbner basis (monic, sorted by descending leading monomial).
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            if let Some(t) = self.tracked.get() {
                return Arc::new(t.basis.clone());
            }
            let basis = buchberger::groebner(&self.ring, &self.gens, false);
            Arc::new(basis.into_iter().map(|t| t.poly).collect())
        })
    }

    fn tracked_basis(&self) -> &TrackedBasis {
        self.tracked.get_or_init(|| {
            let basis = buchberger::groebner(&self.ring, &self.gens, true);
            let (basis, cofactors) = basis.into_iter().map(|t| (t.poly, t.cofactors)).unzip();
            Arc::new(TrackedBasis { basis, cofactors })
        })
    }

    /// The ideal generated by its reduced Gröbner basis (GB already cached).
    pub fn interreduced(&self) -> Ideal {
        let basis = self.groebner_basis().to_vec();
        let out = Self::from_checked(&self.ring, basis.clone());
        let _ = out.gb.set(Arc::new(basis));
        out
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, IdealError> {
        RingSpec::check_same(&self.ring, p.ring())?;
        Ok(normal_form_by(p, self.groebner_basis()))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        if other.gens.is_empty() {
            return Ok(true);
        }
        let basis = self.groebner_basis();
        Ok(other.gens.iter().all(|g| normal_form_by(g, basis).is_zero()))
    }

    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    pub fn ideal_equal(&self, other: &Ideal) -> Result<bool, IdealError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        Ok(Self::from_checked(&self.ring, dedup(self.gens.iter().chain(&other.gens).cloned())))
    }

    /// Pairwise products of generators, in row-major order.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        let prods = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a * b));
        Ok(Self::from_checked(&self.ring, dedup(prods)))
    }

    /// `I^e` as an iterated product; `I^0 = (1)`.
    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Cofactors over the original generators expressing `p`.
    pub fn lift(&self, p: &Polynomial) -> Result<MembershipCertificate, IdealError> {
        RingSpec::check_same(&self.ring, p.ring())?;
        let tb = self.tracked_basis();
        let (quotients, rem) = buchberger::divide(p, &tb.basis);
        if !rem.is_zero() {
            return Err(IdealError::NotMember(p.to_string()));
        }
        let mut cofactors = vec![Polynomial::zero(&self.ring); self.gens.len()];
        for (q, row) in quotients.iter().zip(&tb.cofactors) {
            if q.is_zero() {
                continue;
            }
            for (c, r) in cofactors.iter_mut().zip(row) {
                if !r.is_zero() {
                    *c = &*c + &(q * r);
                }
            }
        }
        let cert = MembershipCertificate {
            target: p.clone(),
            generators: self.gens.clone(),
            cofactors,
        };
        debug_assert!(cert.verify());
        Ok(cert)
    }

    /// Short stable digest of the reduced Gröbner basis.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.ring.to_string().as_bytes());
        for g in self.groebner_basis() {
            hasher.update(b"\n");
            hasher.update(g.to_string().as_bytes());
        }
        let digest = hasher.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn dedup(it: impl Iterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut seen = std::collections::HashSet::new();
    it.filter(|p| !p.is_zero() && seen.insert(p.clone())).collect()
}

pub(crate) fn normal_form_by(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    if basis.is_empty() {
        return p.clone();
    }
    buchberger::divide(p, basis).1
}

pub fn groebner_basis(ideal: &Ideal) -> Vec<Polynomial> {
    ideal.groebner_basis().to_vec()
}

pub fn normal_form(p: &Polynomial, ideal: &Ideal) -> Result<Polynomial, IdealError> {
    ideal.normal_form(p)
}

pub fn contains(ideal: &Ideal, p: &Polynomial) -> Result<bool, IdealError> {
    ideal.contains(p)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool, IdealError> {
    i.ideal_equal(j)
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.sum(j)
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.product(j)
}

pub fn ideal_power(i: &Ideal, e: u32) -> Ideal {
    i.power(e)
}

pub fn lift(p: &Polynomial, ideal: &Ideal) -> Result<MembershipCertificate, IdealError> {
    ideal.lift(p)
}

/// `target = sum cofactors[i] * generators[i]`, checkable by re-expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub target: Polynomial,
    pub generators: Vec<Polynomial>,
    pub cofactors: Vec<Polynomial>,
}

impl MembershipCertificate {
    pub fn verify(&self) -> bool {
        if self.generators.len() != self.cofactors.len() {
            return false;
        }
        let ring = self.target.ring();
        if self
            .generators
            .iter()
            .chain(&self.cofactors)
            .any(|p| !RingSpec::same(ring, p.ring()))
        {
            return false;
        }
        let mut sum = Polynomial::zero(ring);
        for (g, c) in self.generators.iter().zip(&self.cofactors) {
            sum = &sum + &(g * c);
        }
        sum == self.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MonomialOrder};
    use crate::exprio::parse_poly;

    fn ring() -> Arc<RingSpec> {
        RingSpec::rational(&["u", "v"])
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &ring()).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(&ring(), gens.iter().map(|s| p(s))).unwrap()
    }

    #[test]
    fn rush_content_is_the_maximal_ideal() {
        let i = ideal(&["u*v", "u + v^2", "v + v^2"]);
        assert_eq!(i.groebner_basis(), &[p("u"), p("v")]);
        assert!(i.ideal_equal(&ideal(&["u", "v"])).unwrap());
        assert!(i.normal_form(&p("v")).unwrap().is_zero());
        assert!(i.normal_form(&p("u - v")).unwrap().is_zero());
        assert!(i.contains(&p("v")).unwrap());
    }

    #[test]
    fn zero_ideal() {
        let z = Ideal::zero(&ring());
        assert!(z.groebner_basis().is_empty());
        assert_eq!(z.normal_form(&p("u + 3")).unwrap(), p("u + 3"));
        assert!(z.contains(&Polynomial::zero(&ring())).unwrap());
        assert_eq!(z.to_string(), "(0)");
    }

    #[test]
    fn redundant_generators_collapse() {
        let i = ideal(&["u^2", "u*v", "v^2", "u"]);
        assert_eq!(i.groebner_basis(), &[p("v^2"), p("u")]);
        assert!(!ideal(&["u", "v"]).ideal_equal(&ideal(&["u", "v^2"])).unwrap());
    }

    #[test]
    fn membership_negative_case() {
        // u^2 is not in (uv, u^2+v^2): degree-2 piece is spanned by uv and u^2+v^2 only.
        let i = ideal(&["u*v", "u^2 + v^2"]);
        assert!(!i.contains(&p("u^2")).unwrap());
        assert!(i.contains(&Polynomial::zero(&ring())).unwrap());
    }

    #[test]
    fn products_and_powers() {
        let m = ideal(&["u", "v"]);
        assert_eq!(m.power(2).gens(), &[p("u^2"), p("u*v"), p("v^2")]);
        assert!(m.power(0).is_unit());
        let prod = m.product(&ideal(&["u*v", "u^2 + v^2"])).unwrap();
        assert_eq!(prod.gens(), &[p("u^2*v"), p("u^3 + u*v^2"), p("u*v^2"), p("u^2*v + v^3")]);
        let expected = ideal(&["u^2*v", "u*v^2", "u^3 + u*v^2", "u^2*v + v^3"]);
        assert!(prod.ideal_equal(&expected).unwrap());
        assert!(m.product(&m).unwrap().ideal_equal(&m.power(2)).unwrap());
    }

    #[test]
    fn lift_reproduces_certificates() {
        let i = ideal(&["u*v", "u + v^2", "v + v^2"]);
        for target in ["v", "u - v", "u", "u*v + 7*v^3"] {
            let cert = i.lift(&p(target)).unwrap();
            assert!(cert.verify(), "{target}");
        }
        let printed = MembershipCertificate {
            target: p("v"),
            generators: i.gens().to_vec(),
            cofactors: vec![p("-1"), p("v"), p("1 - v")],
        };
        assert!(printed.verify());
        let second = MembershipCertificate {
            target: p("u - v"),
            generators: i.gens().to_vec(),
            cofactors: vec![p("0"), p("1"), p("-1")],
        };
        assert!(second.verify());
        assert!(matches!(
            ideal(&["u*v", "u^2 + v^2"]).lift(&p("u^2")),
            Err(IdealError::NotMember(_))
        ));
        let g = ideal(&["u + v", "u*v"]);
        assert!(g.lift(&p("u + v")).unwrap().verify());
    }

    #[test]
    fn ring_mismatch_rejected() {
        let other = RingSpec::new(["u", "v"], Field::prime(7).unwrap(), MonomialOrder::Grevlex).unwrap();
        let q = Polynomial::var(&other, 0);
        assert!(matches!(ideal(&["u"]).contains(&q), Err(IdealError::Algebra(_))));
    }

    #[test]
    fn lex_order_basis() {
        let r = RingSpec::new(["x", "y"], Field::Rational, MonomialOrder::Lex).unwrap();
        let i = Ideal::new(&r, [parse_poly("x^2 - y", &r).unwrap(), parse_poly("x*y - 1", &r).unwrap()]).unwrap();
        // Elimination ideal contains y^3 - 1.
        assert!(i.contains(&parse_poly("y^3 - 1", &r).unwrap()).unwrap());
        assert!(i.groebner_basis().iter().any(|g| g.leading_monomial().unwrap().exps()[0] == 0));
    }
}
