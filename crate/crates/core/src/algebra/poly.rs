use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{AlgebraError, FieldElement, Monomial, RationalPoint, RingSpec};

/// Sparse polynomial: terms strictly descending in the ring's monomial order, no zero
/// coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<RingSpec>,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        RingSpec::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<RingSpec>, c: FieldElement) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<RingSpec>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<RingSpec>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), ring.field().one())
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Monomial, c: FieldElement) -> Self {
        debug_assert_eq!(m.exps().len(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Canonicalizes an arbitrary term list (any order, repeats, zeros allowed).
    pub fn from_terms(ring: &Arc<RingSpec>, mut terms: Vec<(Monomial, FieldElement)>) -> Self {
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The nonzero scalar this polynomial equals, if it is constant and nonzero.
    pub fn as_scalar(&self) -> Option<&FieldElement> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn constant_coeff(&self) -> FieldElement {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        Ok(self.merge(other, None))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        Ok(self.merge(other, Some(&self.ring.field().one().neg())))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut products = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                products.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        Polynomial::from_terms(&self.ring, products)
    }

    /// `self + scale * other`, merging the two sorted term lists.
    fn merge(&self, other: &Self, scale: Option<&FieldElement>) -> Self {
        let b = other.terms.iter().map(|(m, c)| {
            let c = match scale {
                Some(s) => c.mul(s),
                None => c.clone(),
            };
            (m.clone(), c)
        });
        Polynomial {
            ring: self.ring.clone(),
            terms: merge_terms(self.ring.order(), self.terms.iter().cloned(), b),
        }
    }

    /// `self - c * m * g`, consuming `self`; the workhorse of division.
    pub(crate) fn sub_scaled_shift(self, c: &FieldElement, m: &Monomial, g: &Self) -> Self {
        let neg = c.neg();
        let b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc.mul(&neg)));
        let order = self.ring.order();
        Polynomial {
            terms: merge_terms(order, self.terms.into_iter(), b),
            ring: self.ring,
        }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, FieldElement)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub(crate) fn push_trailing(&mut self, m: Monomial, c: FieldElement) {
        debug_assert!(self
            .terms
            .last()
            .map_or(true, |(lm, _)| self.ring.order().compare(lm, &m) == Ordering::Greater));
        self.terms.push((m, c));
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, tc)| (m.clone(), tc.mul(c))).collect(),
        }
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Substitutes `x_i -> x_i + c_i`.
    pub fn shift(&self, pt: &RationalPoint) -> Result<Self, AlgebraError> {
        if pt.coords().len() != self.ring.nvars() {
            return Err(AlgebraError::PointArity {
                expected: self.ring.nvars(),
                found: pt.coords().len(),
            });
        }
        if pt.is_origin() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let linear: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::var(&self.ring, i).merge(&Polynomial::constant(&self.ring, pt.coords()[i].clone()), None))
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&self.ring)]; n];
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ring, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&linear[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul_unchecked(&powers[i][e as usize]);
                }
            }
            acc = acc.merge(&t, None);
        }
        Ok(acc)
    }
}

fn merge_terms(
    order: super::MonomialOrder,
    a: impl Iterator<Item = (Monomial, FieldElement)>,
    b: impl Iterator<Item = (Monomial, FieldElement)>,
) -> Vec<(Monomial, FieldElement)> {
    let (lo, _) = a.size_hint();
    let mut out = Vec::with_capacity(lo + b.size_hint().0);
    let mut a = a.peekable();
    let mut b = b.peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some((ma, _)), Some((mb, _))) => order.compare(ma, mb),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (m, ca) = a.next().unwrap();
                let (_, cb) = b.next().unwrap();
                let c = ca.add(&cb);
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().one().neg())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for (v, &e) in self.ring.vars().iter().zip(m.exps()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
