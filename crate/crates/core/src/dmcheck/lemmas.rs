//! Local statements about contents, decided globally.
//!
//! For `J ⊆ I`, Nakayama gives `J_m = I_m` exactly when `I ⊆ J + mI`, and the latter is
//! an ordinary membership question once `m` is moved to the origin.

use crate::algebra::{Polynomial, RationalPoint, RingSpec};
use crate::groebner::{minimal_generators_at, Ideal};
use crate::series::{truncated_content, UnitSeries, UnitTailSeries};

use super::DmError;

fn shifted(i: &Ideal, pt: &RationalPoint) -> Result<Ideal, DmError> {
    let gens = i.gens().iter().map(|g| g.shift(pt)).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(i.ring(), gens)?)
}

/// `m I` for `m` the variable ideal.
fn times_max(i: &Ideal) -> Result<Ideal, DmError> {
    let ring = i.ring();
    let gens = (0..ring.nvars()).flat_map(|v| {
        let x = Polynomial::var(ring, v);
        i.gens().iter().map(move |g| &x * g).collect::<Vec<_>>()
    });
    Ok(Ideal::new(ring, gens)?)
}

/// `big ⊆ small + m big` at `pt`; with `small ⊆ big` this is `small_m = big_m`.
fn covers_locally(small: &Ideal, big: &Ideal, pt: &RationalPoint) -> Result<bool, DmError> {
    let small = shifted(small, pt)?;
    let big = shifted(big, pt)?;
    let target = small.sum(&times_max(&big)?)?;
    Ok(target.contains_ideal(&big)?)
}

/// Adding `b u X^i` with `b ∈ m c(g)` does not change the content locally at `m`.
///
/// The content of `h = g + b u X^i` is exact when the new term lands on a free exponent
/// or merges with a term carrying the same unit; otherwise its truncated contents are
/// used, which only makes the local covering harder to reach. A `false` result means
/// the statement failed to check and points at a bug.
pub fn mingen_perturbation_check(
    g: &UnitTailSeries,
    b: &Polynomial,
    i: usize,
    u: &UnitSeries,
    pt: &RationalPoint,
) -> Result<bool, DmError> {
    RingSpec::check_same(g.ring(), b.ring())?;
    RingSpec::check_same(g.ring(), u.ring())?;
    let cg = g.content();
    let m_cg = times_max(&shifted(&cg, pt)?)?;
    if !m_cg.contains(&b.shift(pt)?)? {
        return Err(DmError::PreconditionFailed(format!("{b} is not in m c(g)")));
    }
    if b.is_zero() {
        return Ok(true);
    }
    match g.insert_term(b.clone(), i, u.clone()) {
        Ok(h) => {
            let ch = h.content();
            Ok(cg.contains_ideal(&ch)? && covers_locally(&ch, &cg, pt)?)
        }
        Err(_) => {
            // The exponent is taken by a term with another unit: expand instead.
            let d_lim = g
                .known_precision()
                .into_iter()
                .chain(u.precision().map(|p| p + i))
                .min()
                .unwrap_or(g.precision().max(i) + 2 * g.terms().len() + 4);
            let mut h = g.expand(d_lim)?;
            let bu = u.expand(d_lim - i)?;
            let mut coeffs = h.coeffs().to_vec();
            for (k, c) in bu.coeffs().iter().enumerate() {
                coeffs[i + k] = &coeffs[i + k] + &(b * c);
            }
            h = crate::series::TruncatedSeries::new(g.ring(), coeffs)?;
            for d in 0..=d_lim {
                let ch = truncated_content(&h, d)?;
                if covers_locally(&ch, &cg, pt)? {
                    return Ok(cg.contains_ideal(&ch)?);
                }
            }
            Ok(false)
        }
    }
}

/// Dropping the last of `k` minimal generators: if `J ⊆ (c_1..c_{k-1})` and
/// `J + (c_k) = I` at `pt`, then `J = (c_1..c_{k-1})` there.
///
/// The minimal generators are the keep-first ones of `ideal` at `pt`. Errors when `J`
/// does not meet the hypotheses; otherwise returns whether the conclusion checks.
pub fn drop_generator_check(ideal: &Ideal, j: &Ideal, pt: &RationalPoint) -> Result<bool, DmError> {
    let mingens = minimal_generators_at(ideal, pt)?;
    if mingens.len() < 2 {
        return Err(DmError::PreconditionFailed("needs at least two local generators".into()));
    }
    let (c_k, rest) = mingens.split_last().expect("two or more");
    let k_ideal = Ideal::new(ideal.ring(), rest.iter().cloned())?;
    if !k_ideal.contains_ideal(j)? {
        return Err(DmError::PreconditionFailed("J is not inside (c_1..c_{k-1})".into()));
    }
    let j_plus = j.sum(&Ideal::new(ideal.ring(), [c_k.clone()])?)?;
    if !covers_locally(&j_plus, ideal, pt)? {
        return Err(DmError::PreconditionFailed("J + (c_k) differs from I locally".into()));
    }
    covers_locally(j, &k_ideal, pt)
}
