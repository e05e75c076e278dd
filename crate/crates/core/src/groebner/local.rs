//! Minimal generator counts of `I` localized at a rational maximal ideal `m`.
//!
//! `mu(I_m) = dim_k I/mI`. `I/mI` is supported at `m` alone, so the dimension can be read
//! off globally: shift `m` to the variable ideal, then take the span of the generators'
//! normal forms modulo `mI`. Normal forms are linear over `k`, so `g ∈ mI + (kept)` is
//! exactly `NF(g) ∈ span_k NF(kept)`.

use crate::algebra::{Polynomial, RationalPoint};

use super::{normal_form_by, Ideal, IdealError};

/// Row-echelon rows with pairwise distinct leading monomials.
struct Echelon {
    rows: Vec<Polynomial>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Inserts `v` if it is independent of the current rows.
    fn insert(&mut self, mut v: Polynomial) -> bool {
        while let Some((lm, lc)) = v.leading_term().cloned() {
            match self.rows.iter().find(|r| r.leading_monomial() == Some(&lm)) {
                Some(row) => v = v.sub_scaled_shift(&lc, &crate::algebra::Monomial::one(lm.exps().len()), row),
                None => {
                    self.rows.push(v.monic());
                    return true;
                }
            }
        }
        false
    }
}

/// Residues of the generators of `I` in `I / mI`, for `m` the maximal ideal at `pt`.
fn residues(ideal: &Ideal, pt: &RationalPoint) -> Result<Vec<Polynomial>, IdealError> {
    if ideal.is_zero() {
        return Err(IdealError::ZeroIdeal);
    }
    let ring = ideal.ring();
    let shifted: Vec<Polynomial> = ideal
        .gens()
        .iter()
        .map(|g| g.shift(pt))
        .collect::<Result<_, _>>()?;
    let n = ring.nvars();
    let m_times_i = Ideal::new(
        ring,
        (0..n).flat_map(|i| {
            let x = Polynomial::var(ring, i);
            shifted.iter().map(move |g| &x * g).collect::<Vec<_>>()
        }),
    )?;
    let basis = m_times_i.groebner_basis();
    Ok(shifted.iter().map(|g| normal_form_by(g, basis)).collect())
}

/// `mu(I_m)`, the minimal number of generators of `I` localized at the point.
pub fn mu_at_point(ideal: &Ideal, pt: &RationalPoint) -> Result<usize, IdealError> {
    let mut ech = Echelon::new();
    Ok(residues(ideal, pt)?.into_iter().filter(|r| ech.insert(r.clone())).count())
}

/// Keep-first sublist of the generators that generates `I_m`: a generator is dropped when
/// it lies in `mI` plus the generators kept before it.
pub fn minimal_generators_at(ideal: &Ideal, pt: &RationalPoint) -> Result<Vec<Polynomial>, IdealError> {
    let mut ech = Echelon::new();
    let res = residues(ideal, pt)?;
    Ok(ideal
        .gens()
        .iter()
        .zip(res)
        .filter(|(_, r)| ech.insert(r.clone()))
        .map(|(g, _)| g.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::RingSpec;
    use crate::exprio::parse_poly;

    fn ring() -> Arc<RingSpec> {
        RingSpec::rational(&["u", "v"])
    }

    fn ideal(gens: &[&str]) -> Ideal {
        let r = ring();
        Ideal::new(&r, gens.iter().map(|s| parse_poly(s, &r).unwrap())).unwrap()
    }

    #[test]
    fn mu_examples() {
        let r = ring();
        let origin = RationalPoint::origin(&r);
        assert_eq!(mu_at_point(&ideal(&["u", "v"]), &origin).unwrap(), 2);
        assert_eq!(mu_at_point(&ideal(&["u*v", "u + v^2", "v + v^2"]), &origin).unwrap(), 2);
        // (u, v) is the unit ideal locally at (1, 1).
        let pt = RationalPoint::from_i64(&r, &[1, 1]).unwrap();
        assert_eq!(mu_at_point(&ideal(&["u", "v"]), &pt).unwrap(), 1);
        // At (0, 1), u is a local parameter and v a unit.
        let pt = RationalPoint::from_i64(&r, &[0, 1]).unwrap();
        assert_eq!(mu_at_point(&ideal(&["u", "v"]), &pt).unwrap(), 1);
        assert_eq!(mu_at_point(&ideal(&["u - 1", "v - 1"]), &RationalPoint::from_i64(&r, &[1, 1]).unwrap()).unwrap(), 2);
    }

    #[test]
    fn zero_ideal_rejected() {
        let r = ring();
        assert!(matches!(
            mu_at_point(&Ideal::zero(&r), &RationalPoint::origin(&r)),
            Err(IdealError::ZeroIdeal)
        ));
        assert!(minimal_generators_at(&Ideal::zero(&r), &RationalPoint::origin(&r)).is_err());
    }

    #[test]
    fn keep_first_generators() {
        let r = ring();
        let origin = RationalPoint::origin(&r);
        let kept = minimal_generators_at(&ideal(&["u", "v", "u + v"]), &origin).unwrap();
        assert_eq!(kept, vec![parse_poly("u", &r).unwrap(), parse_poly("v", &r).unwrap()]);
        assert_eq!(minimal_generators_at(&ideal(&["u"]), &origin).unwrap().len(), 1);
        let rush = ideal(&["u*v", "u + v^2", "v + v^2"]);
        let kept = minimal_generators_at(&rush, &origin).unwrap();
        assert_eq!(kept.len(), 2);
        let local = Ideal::new(&r, kept).unwrap().sum(&mi(&rush)).unwrap();
        assert!(rush.ideal_equal(&local).unwrap());
    }

    fn mi(i: &Ideal) -> Ideal {
        let r = i.ring();
        Ideal::new(r, [Polynomial::var(r, 0), Polynomial::var(r, 1)]).unwrap().product(i).unwrap()
    }
}
