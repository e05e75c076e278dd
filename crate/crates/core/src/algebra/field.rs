use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Largest prime accepted for modular coefficient fields.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Coefficient field of the ring `k[x1..xn]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composites and primes above [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Modular { value: 0, prime: p },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElement::Modular {
                value: n.rem_euclid(p as i64) as u64,
                prime: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                FieldElement::Modular {
                    value: r.to_u64().expect("residue fits u64"),
                    prime: p,
                }
            }
        }
    }

    /// `num / den` in this field; `None` when the denominator vanishes.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Option<FieldElement> {
        let den = self.from_bigint(den);
        if den.is_zero() {
            return None;
        }
        Some(self.from_bigint(num).mul(&den.inv()?))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Q` (always reduced, positive denominator) or of `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, prime: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Modular { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    /// Checked addition; fails when the operands live in different fields.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a + b)),
            (FieldElement::Modular { value: a, prime: p }, FieldElement::Modular { value: b, prime: q })
                if p == q =>
            {
                Ok(FieldElement::Modular {
                    value: (a + b) % p,
                    prime: *p,
                })
            }
            _ => Err(AlgebraError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a * b)),
            (FieldElement::Modular { value: a, prime: p }, FieldElement::Modular { value: b, prime: q })
                if p == q =>
            {
                Ok(FieldElement::Modular {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    prime: *p,
                })
            }
            _ => Err(AlgebraError::FieldMismatch(self.field(), other.field())),
        }
    }

    /// Panics on mixed fields; ring-level checks rule that out before we get here.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("mixed-field addition")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("mixed-field multiplication")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { value, prime } => FieldElement::Modular {
                value: (prime - value) % prime,
                prime: *prime,
            },
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Modular { value, prime } => FieldElement::Modular {
                value: pow_mod(*value, prime - 2, *prime),
                prime: *prime,
            },
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when printing needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(a) => a.is_negative(),
            FieldElement::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.abs()),
            m => m.clone(),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let x = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert!(x.add(&q.from_ratio(&3.into(), &2.into()).unwrap()).is_zero());
    }

    #[test]
    fn modular_inverse() {
        let f = Field::prime(101).unwrap();
        for n in 1..101 {
            let x = f.from_i64(n);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert_eq!(f.from_i64(-1).to_string(), "100");
    }

    #[test]
    fn mixed_primes_rejected() {
        let a = Field::prime(7).unwrap().one();
        let b = Field::prime(11).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch(..))));
        assert!(a.try_mul(&Field::Rational.one()).is_err());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(MAX_PRIME + 2).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Field::Rational.zero().inv().is_none());
        assert!(Field::prime(5).unwrap().from_i64(10).inv().is_none());
    }
}
