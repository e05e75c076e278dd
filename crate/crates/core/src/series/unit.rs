use std::fmt;
use std::sync::Arc;

use crate::algebra::{Polynomial, RingSpec};

use super::{SeriesError, TruncatedSeries};

/// A unit of `R[[X]]`: a series whose constant coefficient is a nonzero scalar.
///
/// Units given in closed form (`num / den` with both polynomial in `X`) expand to any
/// precision; units only known as a truncation carry that precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSeries {
    ring: Arc<RingSpec>,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Ratio { num: Vec<Polynomial>, den: Vec<Polynomial> },
    Truncated(TruncatedSeries),
}

fn check_unit_constant(c: Option<&Polynomial>) -> Result<(), SeriesError> {
    match c {
        Some(c) if c.as_scalar().is_some() => Ok(()),
        Some(c) => Err(SeriesError::NotAUnit(c.to_string())),
        None => Err(SeriesError::NotAUnit("0".into())),
    }
}

fn trim(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
    while v.len() > 1 && v.last().is_some_and(Polynomial::is_zero) {
        v.pop();
    }
    v
}

impl UnitSeries {
    pub fn one(ring: &Arc<RingSpec>) -> Self {
        UnitSeries {
            ring: ring.clone(),
            repr: Repr::Ratio {
                num: vec![Polynomial::one(ring)],
                den: vec![Polynomial::one(ring)],
            },
        }
    }

    /// `1 + X + X^2 + .. = 1 / (1 - X)`.
    pub fn geometric(ring: &Arc<RingSpec>) -> Self {
        UnitSeries {
            ring: ring.clone(),
            repr: Repr::Ratio {
                num: vec![Polynomial::one(ring)],
                den: vec![Polynomial::one(ring), Polynomial::from_i64(ring, -1)],
            },
        }
    }

    /// A unit that is a polynomial in `X`, coefficients listed from `X^0`.
    pub fn polynomial(ring: &Arc<RingSpec>, coeffs: Vec<Polynomial>) -> Result<Self, SeriesError> {
        Self::ratio(ring, coeffs, vec![Polynomial::one(ring)])
    }

    /// `num / den`, both polynomials in `X` with nonzero scalar constant terms.
    pub fn ratio(ring: &Arc<RingSpec>, num: Vec<Polynomial>, den: Vec<Polynomial>) -> Result<Self, SeriesError> {
        for c in num.iter().chain(&den) {
            RingSpec::check_same(ring, c.ring())?;
        }
        check_unit_constant(num.first())?;
        check_unit_constant(den.first())?;
        Ok(UnitSeries {
            ring: ring.clone(),
            repr: Repr::Ratio {
                num: trim(num),
                den: trim(den),
            },
        })
    }

    pub fn truncated(series: TruncatedSeries) -> Result<Self, SeriesError> {
        check_unit_constant(series.coeff(0))?;
        Ok(UnitSeries {
            ring: series.ring().clone(),
            repr: Repr::Truncated(series),
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    /// `None` when the unit is known exactly to every order.
    pub fn precision(&self) -> Option<usize> {
        match &self.repr {
            Repr::Ratio { .. } => None,
            Repr::Truncated(t) => Some(t.precision()),
        }
    }

    /// A polynomial in `X` (finitely many nonzero coefficients, all known).
    pub fn is_polynomial(&self) -> bool {
        matches!(&self.repr, Repr::Ratio { den, .. } if den.len() == 1)
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Ratio { num, den } => num.len() == 1 && den.len() == 1 && num[0] == den[0],
            Repr::Truncated(_) => false,
        }
    }

    /// Closed-form numerator and denominator, if the unit has them.
    pub fn as_ratio(&self) -> Option<(&[Polynomial], &[Polynomial])> {
        match &self.repr {
            Repr::Ratio { num, den } => Some((num, den)),
            Repr::Truncated(_) => None,
        }
    }

    /// Stored coefficients for a truncated unit.
    pub fn as_truncated(&self) -> Option<&TruncatedSeries> {
        match &self.repr {
            Repr::Truncated(t) => Some(t),
            Repr::Ratio { .. } => None,
        }
    }

    /// Coefficients of `X^0 .. X^d`.
    pub fn expand(&self, d: usize) -> Result<TruncatedSeries, SeriesError> {
        match &self.repr {
            Repr::Truncated(t) => {
                if t.precision() < d {
                    return Err(SeriesError::InsufficientUnitPrecision {
                        needed: d,
                        available: t.precision(),
                    });
                }
                Ok(t.truncate(d))
            }
            Repr::Ratio { num, den } => {
                let pad = |v: &[Polynomial]| -> Vec<Polynomial> {
                    (0..=d)
                        .map(|i| v.get(i).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring)))
                        .collect()
                };
                let num = TruncatedSeries::from_checked(&self.ring, pad(num));
                if den.len() == 1 && den[0].as_scalar().is_some_and(|c| c.is_one()) {
                    return Ok(num);
                }
                let inv = invert(&TruncatedSeries::from_checked(&self.ring, pad(den)));
                num.mul(&inv)
            }
        }
    }
}

/// `c0 + c1*X - (c2)*X^2 ..`, zero coefficients skipped.
pub(crate) fn fmt_in_x(coeffs: &[Polynomial]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let negative = c.len() == 1 && c.leading_coeff().is_some_and(|l| l.is_negative());
        let c = if negative { -c } else { c.clone() };
        let body = match (i, c.len() > 1) {
            (0, _) => c.to_string(),
            (_, true) => format!("({c})*"),
            (_, false) if c.as_scalar().is_some_and(|s| s.is_one()) => String::new(),
            (_, false) => format!("{c}*"),
        };
        let power = match i {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{i}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
        out.push_str(&power);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UnitSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Ratio { num, den } if den.len() == 1 && den[0].as_scalar().is_some_and(|c| c.is_one()) => {
                write!(f, "{}", fmt_in_x(num))
            }
            Repr::Ratio { num, den } => write!(f, "({})/({})", fmt_in_x(num), fmt_in_x(den)),
            Repr::Truncated(t) => write!(f, "{} + O(X^{})", fmt_in_x(t.coeffs()), t.precision() + 1),
        }
    }
}

/// Inverse of a series with scalar constant term, to its own precision.
fn invert(s: &TruncatedSeries) -> TruncatedSeries {
    let ring = s.ring();
    let c0 = s.coeffs()[0].as_scalar().expect("unit constant term");
    let c0_inv = Polynomial::constant(ring, c0.inv().expect("nonzero"));
    let mut out: Vec<Polynomial> = vec![c0_inv.clone()];
    for n in 1..=s.precision() {
        let mut acc = Polynomial::zero(ring);
        for k in 1..=n {
            let a = &s.coeffs()[k];
            if !a.is_zero() && !out[n - k].is_zero() {
                acc = &acc + &(a * &out[n - k]);
            }
        }
        out.push(-&(&c0_inv * &acc));
    }
    TruncatedSeries::from_checked(ring, out)
}

/// `u^-1` to precision `d` (capped at the precision `u` is known to).
pub fn unit_inverse(u: &UnitSeries, d: usize) -> UnitSeries {
    let d = u.precision().map_or(d, |p| p.min(d));
    let expanded = u.expand(d).expect("precision capped above");
    UnitSeries {
        ring: u.ring.clone(),
        repr: Repr::Truncated(invert(&expanded)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse_poly;

    fn ring() -> Arc<RingSpec> {
        RingSpec::rational(&["u", "v"])
    }

    fn polys(cs: &[&str]) -> Vec<Polynomial> {
        cs.iter().map(|c| parse_poly(c, &ring()).unwrap()).collect()
    }

    #[test]
    fn geometric_inverse() {
        let r = ring();
        let one_minus_x = UnitSeries::polynomial(&r, polys(&["1", "-1"])).unwrap();
        let inv = unit_inverse(&one_minus_x, 3);
        assert_eq!(inv.expand(3).unwrap().coeffs(), polys(&["1", "1", "1", "1"]).as_slice());
        assert_eq!(UnitSeries::geometric(&r).expand(3).unwrap(), inv.expand(3).unwrap());
        let one = unit_inverse(&UnitSeries::one(&r), 4);
        assert_eq!(one.expand(4).unwrap(), TruncatedSeries::one(&r, 4));
    }

    #[test]
    fn inverse_with_ring_coefficients() {
        let r = ring();
        let u = UnitSeries::polynomial(&r, polys(&["2", "u"])).unwrap();
        let inv = unit_inverse(&u, 2);
        assert_eq!(inv.expand(2).unwrap().coeffs(), polys(&["1/2", "-1/4*u", "1/8*u^2"]).as_slice());
        let prod = u.expand(2).unwrap().mul(&inv.expand(2).unwrap()).unwrap();
        assert_eq!(prod, TruncatedSeries::one(&r, 2));
    }

    #[test]
    fn constant_term_must_be_scalar() {
        let r = ring();
        assert!(matches!(
            UnitSeries::polynomial(&r, polys(&["u", "1"])),
            Err(SeriesError::NotAUnit(_))
        ));
        assert!(UnitSeries::polynomial(&r, polys(&["0", "1"])).is_err());
        assert!(UnitSeries::polynomial(&r, vec![]).is_err());
    }

    #[test]
    fn truncated_units_know_their_precision() {
        let r = ring();
        let t = TruncatedSeries::new(&r, polys(&["1", "u", "v"])).unwrap();
        let u = UnitSeries::truncated(t).unwrap();
        assert_eq!(u.precision(), Some(2));
        assert!(matches!(
            u.expand(3),
            Err(SeriesError::InsufficientUnitPrecision { needed: 3, available: 2 })
        ));
        assert_eq!(unit_inverse(&u, 10).precision(), Some(2));
    }
}
