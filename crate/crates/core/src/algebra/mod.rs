//! Exact coefficient fields and sparse multivariate polynomials over `k[x1..xn]`.

mod field;
mod poly;
mod ring;

pub use field::{Field, FieldElement, MAX_PRIME};
pub use poly::Polynomial;
pub use ring::{Monomial, MonomialOrder, RationalPoint, RingSpec, SERIES_VAR};

pub(crate) use ring::is_identifier;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("invalid variable name {0:?}")]
    BadVariable(String),
    #[error("variable name {0:?} is reserved for the series variable")]
    ReservedVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("point has {found} coordinates, ring has {expected} variables")]
    PointArity { expected: usize, found: usize },
}

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, AlgebraError> {
    p.try_add(q)
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, AlgebraError> {
    p.try_mul(q)
}

/// `p(x1 + c1, .., xn + cn)`: moves the maximal ideal at `pt` to the variable ideal.
pub fn shift_to_origin(p: &Polynomial, pt: &RationalPoint) -> Result<Polynomial, AlgebraError> {
    p.shift(pt)
}
