use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::{AlgebraError, Field, FieldElement};

/// Name reserved for the power series variable.
pub const SERIES_VAR: &str = "X";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// The coefficient ring `k[x1..xn]`: variable names, field, monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl RingSpec {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        field: Field,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, AlgebraError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(AlgebraError::BadVariable(v.clone()));
            }
            if v == SERIES_VAR {
                return Err(AlgebraError::ReservedVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(RingSpec { vars, field, order }))
    }

    /// `Q[vars]` with grevlex; panics on invalid names, so only for literals.
    pub fn rational(vars: &[&str]) -> Arc<Self> {
        Self::new(vars.iter().copied(), Field::Rational, MonomialOrder::Grevlex).expect("valid ring")
    }

    /// This ring with the series variable `X` appended as the last variable, for reading
    /// series written as polynomials in `X`.
    pub(crate) fn with_series_var(&self) -> Arc<Self> {
        let mut vars = self.vars.clone();
        vars.push(SERIES_VAR.to_string());
        Arc::new(RingSpec {
            vars,
            field: self.field,
            order: self.order,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn check_same(a: &Arc<Self>, b: &Arc<Self>) -> Result<(), AlgebraError> {
        if Self::same(a, b) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order.name())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Dense exponent vector with its cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 12]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            exps: SmallVec::from_vec(exps),
            degree,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps: SmallVec<[u32; 12]> = SmallVec::from_elem(0, nvars);
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<SmallVec<[u32; 12]>>>()?;
        Some(Monomial {
            degree: self.degree.checked_add(other.degree)?,
            exps,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 12]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A rational point `(c1..cn)`, standing for the maximal ideal `(x1 - c1, .., xn - cn)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    coords: Vec<FieldElement>,
}

impl RationalPoint {
    pub fn new(ring: &RingSpec, coords: Vec<FieldElement>) -> Result<Self, AlgebraError> {
        if coords.len() != ring.nvars() {
            return Err(AlgebraError::PointArity {
                expected: ring.nvars(),
                found: coords.len(),
            });
        }
        if let Some(c) = coords.iter().find(|c| c.field() != ring.field()) {
            return Err(AlgebraError::FieldMismatch(ring.field(), c.field()));
        }
        Ok(RationalPoint { coords })
    }

    pub fn origin(ring: &RingSpec) -> Self {
        RationalPoint {
            coords: vec![ring.field().zero(); ring.nvars()],
        }
    }

    pub fn from_i64(ring: &RingSpec, coords: &[i64]) -> Result<Self, AlgebraError> {
        Self::new(ring, coords.iter().map(|&c| ring.field().from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    pub fn negate(&self) -> Self {
        RationalPoint {
            coords: self.coords.iter().map(FieldElement::neg).collect(),
        }
    }
}
