use std::fmt;
use std::sync::Arc;

use crate::algebra::{Polynomial, RingSpec};
use crate::groebner::Ideal;

use super::{stabilization_index, SeriesError, TruncatedSeries, UnitSeries, DEFAULT_PRECISION};

/// One summand `a * u * X^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitTerm {
    pub a: Polynomial,
    pub j: usize,
    pub unit: UnitSeries,
}

/// `f = sum_j a_j u_j X^j` with distinct exponents and units `u_j` of `R[[X]]`.
/// The content of such a series is exactly `(a_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitTailSeries {
    ring: Arc<RingSpec>,
    precision: usize,
    terms: Vec<UnitTerm>,
}

impl UnitTailSeries {
    pub fn new(ring: &Arc<RingSpec>, precision: usize, mut terms: Vec<UnitTerm>) -> Result<Self, SeriesError> {
        for t in &terms {
            RingSpec::check_same(ring, t.a.ring())?;
            RingSpec::check_same(ring, t.unit.ring())?;
            if t.j > precision {
                return Err(SeriesError::PrecisionExceeded {
                    requested: t.j,
                    precision,
                });
            }
        }
        terms.sort_by_key(|t| t.j);
        if let Some(w) = terms.windows(2).find(|w| w[0].j == w[1].j) {
            return Err(SeriesError::DuplicateExponent(w[0].j));
        }
        Ok(UnitTailSeries {
            ring: ring.clone(),
            precision,
            terms,
        })
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        UnitTailSeries {
            ring: ring.clone(),
            precision: DEFAULT_PRECISION,
            terms: Vec::new(),
        }
    }

    /// The polynomial `sum_j coeffs[j] X^j`, every unit equal to one.
    pub fn from_polynomial(ring: &Arc<RingSpec>, coeffs: Vec<Polynomial>) -> Result<Self, SeriesError> {
        let precision = DEFAULT_PRECISION.max(coeffs.len().saturating_sub(1));
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| UnitTerm {
                a,
                j,
                unit: UnitSeries::one(ring),
            })
            .collect();
        Self::new(ring, precision, terms)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn with_precision(mut self, precision: usize) -> Self {
        self.precision = precision.max(self.terms.last().map_or(0, |t| t.j));
        self
    }

    pub fn terms(&self) -> &[UnitTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.a.is_zero())
    }

    /// True when every unit is a polynomial in `X`, so the series itself is one.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.unit.is_polynomial())
    }

    /// Degree in `X` when the series is a polynomial.
    pub fn polynomial_degree(&self) -> Option<usize> {
        if !self.is_polynomial() {
            return None;
        }
        Some(
            self.terms
                .iter()
                .filter(|t| !t.a.is_zero())
                .map(|t| t.j + t.unit.as_ratio().map_or(0, |(num, _)| num.len() - 1))
                .max()
                .unwrap_or(0),
        )
    }

    /// Highest order to which all coefficients are known; `None` if unbounded.
    pub fn known_precision(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|t| t.unit.precision().map(|p| p + t.j))
            .min()
    }

    pub fn content(&self) -> Ideal {
        Ideal::new(&self.ring, self.terms.iter().map(|t| t.a.clone())).expect("terms share the ring")
    }

    /// Coefficients up to `X^d`.
    pub fn expand(&self, d: usize) -> Result<TruncatedSeries, SeriesError> {
        let mut coeffs = vec![Polynomial::zero(&self.ring); d + 1];
        for t in &self.terms {
            if t.j > d || t.a.is_zero() {
                continue;
            }
            let u = t.unit.expand(d - t.j)?;
            for (k, c) in u.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[t.j + k] = &coeffs[t.j + k] + &(&t.a * c);
                }
            }
        }
        Ok(TruncatedSeries::from_checked(&self.ring, coeffs))
    }

    /// `self + a u X^j`. Fails on an occupied exponent unless the units agree.
    pub fn insert_term(&self, a: Polynomial, j: usize, unit: UnitSeries) -> Result<Self, SeriesError> {
        let mut terms = self.terms.clone();
        match terms.iter_mut().find(|t| t.j == j) {
            Some(t) if t.unit == unit => t.a = &t.a + &a,
            Some(_) => return Err(SeriesError::DuplicateExponent(j)),
            None => terms.push(UnitTerm { a, j, unit }),
        }
        Self::new(&self.ring, self.precision.max(j), terms)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn pdeg_upper_bound(&self) -> usize {
        self.terms.iter().filter(|t| !t.a.is_zero()).map(|t| t.j).max().unwrap_or(0)
    }
}

impl fmt::Display for UnitTailSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| !t.a.is_zero())
            .map(|t| {
                let mut s = if t.a.len() > 1 { format!("({})", t.a) } else { t.a.to_string() };
                let power = match t.j {
                    0 => String::new(),
                    1 => "X".into(),
                    j => format!("X^{j}"),
                };
                if s == "1" && t.j > 0 {
                    s = power;
                } else if t.j > 0 {
                    s = format!("{s}*{power}");
                }
                if !t.unit.is_one() {
                    s.push_str(&format!("*[{}]", t.unit));
                }
                s
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Coefficients of `f` up to `X^d`.
pub fn expand(f: &UnitTailSeries, d: usize) -> Result<TruncatedSeries, SeriesError> {
    f.expand(d)
}

/// `c(f) = (a_0, .., a_n)`.
pub fn content(f: &UnitTailSeries) -> Ideal {
    f.content()
}

/// Largest exponent carrying a nonzero coefficient: an upper bound for the pseudodegree.
pub fn pdeg_upper_bound(f: &UnitTailSeries) -> usize {
    f.pdeg_upper_bound()
}

/// Rewrites a truncation `a_0 .. a_d` as `sum_{j<=n} a_j u_j X^j` with
/// `u_j = 1 + sum_{i>n} r_ij X^(i-j)`, where `a_i = sum_j r_ij a_j` for `n < i <= d`.
///
/// With `recurrence`, row `i - n - 1` holds `r_i0 .. r_in` and is checked; without it,
/// `n` is the stabilization index and the rows come from membership certificates.
/// Units are known to precision `d - j`.
pub fn unit_tail_rewrite(
    f: &TruncatedSeries,
    recurrence: Option<&[Vec<Polynomial>]>,
) -> Result<UnitTailSeries, SeriesError> {
    let ring = f.ring();
    let d = f.precision();
    let a = f.coeffs();
    let (n, rows): (usize, Vec<Vec<Polynomial>>) = match recurrence {
        Some(rows) => {
            let n = d.checked_sub(rows.len()).ok_or(SeriesError::RecurrenceMismatch { index: d + 1 })?;
            for (k, row) in rows.iter().enumerate() {
                let i = n + 1 + k;
                if row.len() != n + 1 {
                    return Err(SeriesError::RecurrenceMismatch { index: i });
                }
                let mut sum = Polynomial::zero(ring);
                for (r, aj) in row.iter().zip(&a[..=n]) {
                    RingSpec::check_same(ring, r.ring())?;
                    sum = &sum + &(r * aj);
                }
                if sum != a[i] {
                    return Err(SeriesError::RecurrenceMismatch { index: i });
                }
            }
            (n, rows.to_vec())
        }
        None => {
            let n = stabilization_index(f);
            let lead: Vec<(usize, Polynomial)> =
                a[..=n].iter().cloned().enumerate().filter(|(_, p)| !p.is_zero()).collect();
            let ideal = Ideal::new(ring, lead.iter().map(|(_, p)| p.clone()))?;
            let mut rows = Vec::with_capacity(d - n);
            for (i, ai) in a.iter().enumerate().skip(n + 1) {
                let mut row = vec![Polynomial::zero(ring); n + 1];
                if !ai.is_zero() {
                    let cert = ideal
                        .lift(ai)
                        .map_err(|_| SeriesError::NotStabilized { index: i })?;
                    for ((j, _), c) in lead.iter().zip(cert.cofactors) {
                        row[*j] = c;
                    }
                }
                rows.push(row);
            }
            (n, rows)
        }
    };

    let mut terms = Vec::new();
    for (j, aj) in a[..=n].iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        let mut u = vec![Polynomial::zero(ring); d - j + 1];
        u[0] = Polynomial::one(ring);
        for (k, row) in rows.iter().enumerate() {
            let i = n + 1 + k;
            u[i - j] = row[j].clone();
        }
        let unit = UnitSeries::truncated(TruncatedSeries::from_checked(ring, u))?;
        terms.push(UnitTerm {
            a: aj.clone(),
            j,
            unit,
        });
    }
    UnitTailSeries::new(ring, d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse_poly;

    fn ring() -> Arc<RingSpec> {
        RingSpec::rational(&["u", "v"])
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &ring()).unwrap()
    }

    fn trunc(cs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::new(&ring(), cs.iter().map(|c| p(c)).collect()).unwrap()
    }

    fn rush_g() -> UnitTailSeries {
        let r = ring();
        UnitTailSeries::new(
            &r,
            16,
            vec![
                UnitTerm { a: p("u"), j: 0, unit: UnitSeries::one(&r) },
                UnitTerm { a: p("v"), j: 1, unit: UnitSeries::geometric(&r) },
            ],
        )
        .unwrap()
    }

    fn rush_f() -> UnitTailSeries {
        UnitTailSeries::from_polynomial(&ring(), vec![p("v"), p("1")]).unwrap()
    }

    #[test]
    fn display() {
        assert_eq!(rush_g().to_string(), "u + v*X*[(1)/(1 - X)]");
        assert_eq!(rush_f().to_string(), "v + X");
        assert_eq!(UnitTailSeries::zero(&ring()).to_string(), "0");
    }

    #[test]
    fn expansions() {
        assert_eq!(rush_g().expand(3).unwrap(), trunc(&["u", "v", "v", "v"]));
        assert_eq!(rush_f().expand(2).unwrap(), trunc(&["v", "1", "0"]));
        let r = ring();
        let c = UnitTailSeries::new(&r, 4, vec![UnitTerm { a: p("u*v"), j: 0, unit: UnitSeries::one(&r) }]).unwrap();
        assert_eq!(c.expand(3).unwrap(), trunc(&["u*v", "0", "0", "0"]));
    }

    #[test]
    fn contents() {
        assert!(rush_f().content().is_unit());
        assert!(UnitTailSeries::zero(&ring()).content().is_zero());
        let m = Ideal::new(&ring(), [p("u"), p("v")]).unwrap();
        assert!(rush_g().content().ideal_equal(&m).unwrap());
    }

    #[test]
    fn pseudodegree_bounds() {
        assert_eq!(rush_f().pdeg_upper_bound(), 1);
        assert_eq!(rush_g().pdeg_upper_bound(), 1);
        let r = ring();
        let single = UnitTailSeries::new(&r, 8, vec![UnitTerm { a: p("u"), j: 0, unit: UnitSeries::geometric(&r) }]).unwrap();
        assert_eq!(single.pdeg_upper_bound(), 0);
    }

    #[test]
    fn rewrite_rush_truncation() {
        let raw = rush_g().expand(8).unwrap();
        let rewritten = unit_tail_rewrite(&raw, None).unwrap();
        let terms = rewritten.terms();
        assert_eq!(terms.len(), 2);
        assert_eq!((terms[0].a.clone(), terms[0].j), (p("u"), 0));
        assert_eq!(terms[0].unit.expand(8).unwrap(), TruncatedSeries::one(&ring(), 8));
        assert_eq!((terms[1].a.clone(), terms[1].j), (p("v"), 1));
        assert_eq!(terms[1].unit.expand(7).unwrap(), UnitSeries::geometric(&ring()).expand(7).unwrap());
        assert_eq!(rewritten.expand(8).unwrap(), raw);
    }

    #[test]
    fn rewrite_polynomial_input() {
        let raw = trunc(&["u", "v^2", "0", "0"]);
        let rewritten = unit_tail_rewrite(&raw, None).unwrap();
        for t in rewritten.terms() {
            let d = 3 - t.j;
            assert_eq!(t.unit.expand(d).unwrap(), TruncatedSeries::one(&ring(), d));
        }
        assert_eq!(rewritten.expand(3).unwrap(), raw);
    }

    #[test]
    fn rewrite_with_lifted_cofactors() {
        let raw = trunc(&["u", "v", "u + v"]);
        let rewritten = unit_tail_rewrite(&raw, None).unwrap();
        assert_eq!(rewritten.pdeg_upper_bound(), 1);
        assert_eq!(rewritten.terms()[0].unit.expand(2).unwrap(), trunc(&["1", "0", "1"]));
        assert_eq!(rewritten.terms()[1].unit.expand(1).unwrap(), trunc(&["1", "1"]));
        assert_eq!(rewritten.expand(2).unwrap(), raw);
    }

    #[test]
    fn declared_recurrence() {
        let raw = trunc(&["u", "v", "u + v", "2*u*v"]);
        let rows = vec![vec![p("1"), p("1")], vec![p("v"), p("u")]];
        let rewritten = unit_tail_rewrite(&raw, Some(&rows)).unwrap();
        assert_eq!(rewritten.expand(3).unwrap(), raw);
        let bad = vec![vec![p("1"), p("1")], vec![p("v"), p("v")]];
        assert!(matches!(
            unit_tail_rewrite(&raw, Some(&bad)),
            Err(SeriesError::RecurrenceMismatch { index: 3 })
        ));
    }

    #[test]
    fn duplicate_exponents_rejected() {
        let r = ring();
        let t = |a: &str| UnitTerm { a: p(a), j: 2, unit: UnitSeries::one(&r) };
        assert!(matches!(
            UnitTailSeries::new(&r, 4, vec![t("u"), t("v")]),
            Err(SeriesError::DuplicateExponent(2))
        ));
        let merged = rush_g().insert_term(p("u*v"), 0, UnitSeries::one(&r)).unwrap();
        assert_eq!(merged.terms()[0].a, p("u*v + u"));
        assert!(rush_g().insert_term(p("u"), 1, UnitSeries::one(&r)).is_err());
    }

    #[test]
    fn truncated_units_bound_expansion() {
        let raw = rush_g().expand(4).unwrap();
        let rewritten = unit_tail_rewrite(&raw, None).unwrap();
        assert_eq!(rewritten.known_precision(), Some(4));
        assert!(matches!(
            rewritten.expand(5),
            Err(SeriesError::InsufficientUnitPrecision { .. })
        ));
    }
}
