use super::{Ideal, IdealError};

/// Least `r <= r_max` with `I^(r+1) = J I^r`, or `None` if there is none in range.
///
/// `J ⊆ I` gives `J I^r ⊆ I^(r+1)` for free, so each step only tests the other inclusion.
pub fn reduction_number(j: &Ideal, i: &Ideal, r_max: u32) -> Result<Option<u32>, IdealError> {
    if !i.contains_ideal(j)? {
        return Err(IdealError::NotSubideal);
    }
    let i_small = i.interreduced();
    let j_small = j.interreduced();
    let mut i_pow = Ideal::unit(i.ring());
    for r in 0..=r_max {
        let lhs = i_pow.product(&i_small)?;
        let rhs = j_small.product(&i_pow)?;
        if rhs.contains_ideal(&lhs)? {
            return Ok(Some(r));
        }
        i_pow = lhs.interreduced();
    }
    Ok(None)
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
    fn self_reduction_is_zero() {
        let i = ideal(&["u^2", "u*v + v^3"]);
        assert_eq!(reduction_number(&i, &i, 3).unwrap(), Some(0));
    }

    #[test]
    fn non_reduction_reports_none() {
        assert_eq!(reduction_number(&ideal(&["u^2"]), &ideal(&["u", "v"]), 3).unwrap(), None);
    }

    #[test]
    fn gauss_failure_pair_has_reduction_number_one() {
        // c(fg) for f = u + vX, g = v + uX inside c(f)c(g) = (u, v)^2.
        let j = ideal(&["u*v", "u^2 + v^2"]);
        let i = ideal(&["u", "v"]).power(2);
        assert_eq!(reduction_number(&j, &i, 3).unwrap(), Some(1));
    }

    #[test]
    fn not_subideal() {
        assert!(matches!(
            reduction_number(&ideal(&["1"]), &ideal(&["u"]), 2),
            Err(IdealError::NotSubideal)
        ));
    }
}
