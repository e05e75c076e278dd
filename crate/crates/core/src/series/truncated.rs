use std::sync::Arc;

use crate::algebra::{Polynomial, RingSpec};
use crate::groebner::Ideal;

use super::SeriesError;

/// `a_0 + a_1 X + .. + a_d X^d mod X^(d+1)`. Trailing zeros are stored, so
/// `coeffs.len() == d + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: Arc<RingSpec>,
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    pub fn new(ring: &Arc<RingSpec>, coeffs: Vec<Polynomial>) -> Result<Self, SeriesError> {
        for c in &coeffs {
            RingSpec::check_same(ring, c.ring())?;
        }
        let coeffs = if coeffs.is_empty() { vec![Polynomial::zero(ring)] } else { coeffs };
        Ok(TruncatedSeries {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_checked(ring: &Arc<RingSpec>, coeffs: Vec<Polynomial>) -> Self {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &Arc<RingSpec>, precision: usize) -> Self {
        Self::from_checked(ring, vec![Polynomial::zero(ring); precision + 1])
    }

    pub fn one(ring: &Arc<RingSpec>, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        s.coeffs[0] = Polynomial::one(ring);
        s
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Polynomial> {
        self.coeffs.get(i)
    }

    pub fn truncate(&self, d: usize) -> Self {
        Self::from_checked(&self.ring, self.coeffs[..=d.min(self.precision())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        let d = self.precision().min(other.precision());
        let coeffs = (0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(Self::from_checked(&self.ring, coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        let d = self.precision().min(other.precision());
        let coeffs = (0..=d)
            .map(|n| {
                let mut acc = Polynomial::zero(&self.ring);
                for i in 0..=n {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_checked(&self.ring, coeffs))
    }

    /// Index of the last nonzero coefficient, `None` for the zero truncation.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

/// Cauchy product, truncated to the smaller precision.
pub fn series_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    f.mul(g)
}

/// `(a_0, .., a_d)`.
pub fn truncated_content(f: &TruncatedSeries, d: usize) -> Result<Ideal, SeriesError> {
    if d > f.precision() {
        return Err(SeriesError::PrecisionExceeded {
            requested: d,
            precision: f.precision(),
        });
    }
    Ok(Ideal::new(f.ring(), f.coeffs[..=d].iter().cloned())?)
}

/// Least `n` such that every stored `a_i` with `i > n` lies in `(a_0, .., a_n)`. Only
/// certifies stabilization up to the stored precision.
pub fn stabilization_index(f: &TruncatedSeries) -> usize {
    let d = f.precision();
    // Candidate n moves up to each coefficient that escapes the current ideal.
    let mut n = 0;
    loop {
        let ideal = Ideal::new(f.ring(), f.coeffs[..=n].iter().cloned()).expect("same ring");
        match (n + 1..=d).find(|&i| !ideal.contains(&f.coeffs[i]).expect("same ring")) {
            Some(i) => n = i,
            None => return n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse_poly;

    fn ring() -> Arc<RingSpec> {
        RingSpec::rational(&["u", "v"])
    }

    fn series(cs: &[&str]) -> TruncatedSeries {
        let r = ring();
        TruncatedSeries::new(&r, cs.iter().map(|c| parse_poly(c, &r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn cauchy_products() {
        let fg = series_mul(&series(&["v", "1", "0", "0"]), &series(&["u", "v", "v", "v"])).unwrap();
        assert_eq!(fg, series(&["u*v", "u + v^2", "v + v^2", "v + v^2"]));
        let f = series(&["u", "v^2", "3"]);
        assert_eq!(series_mul(&f, &TruncatedSeries::one(&ring(), 2)).unwrap(), f);
        assert_eq!(
            series_mul(&series(&["u", "v"]), &series(&["v", "u"])).unwrap(),
            series(&["u*v", "u^2 + v^2"])
        );
        // precision is the minimum of the two
        assert_eq!(series_mul(&series(&["u", "v", "1"]), &series(&["1"])).unwrap().precision(), 0);
    }

    #[test]
    fn truncated_contents() {
        let fg = series(&["u*v", "u + v^2", "v + v^2", "v + v^2", "v + v^2", "v + v^2"]);
        let c2 = truncated_content(&fg, 2).unwrap();
        let expected = Ideal::new(&ring(), series(&["u*v", "u + v^2", "v + v^2"]).coeffs().to_vec()).unwrap();
        assert!(c2.ideal_equal(&expected).unwrap());
        assert!(truncated_content(&fg, 5).unwrap().ideal_equal(&c2).unwrap());
        assert_eq!(truncated_content(&fg, 0).unwrap().gens(), &[parse_poly("u*v", &ring()).unwrap()]);
        assert!(matches!(
            truncated_content(&fg, 6),
            Err(SeriesError::PrecisionExceeded { requested: 6, precision: 5 })
        ));
    }

    #[test]
    fn stabilization() {
        assert_eq!(stabilization_index(&series(&["u", "v", "v", "v", "v", "v", "v"])), 1);
        assert_eq!(stabilization_index(&series(&["u"])), 0);
        assert_eq!(stabilization_index(&series(&["u", "v", "u + v", "u*v"])), 1);
        assert_eq!(stabilization_index(&series(&["u", "u^2", "v", "u"])), 2);
        assert_eq!(stabilization_index(&series(&["0", "0", "u"])), 2);
    }
}
