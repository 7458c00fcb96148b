use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a scalar: the rationals or `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact element of `Q` or of `F_p`.
///
/// Rationals are kept in lowest terms with a positive denominator (this is
/// what [`BigRational`] guarantees); prime-field values live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

impl FieldScalar {
    pub fn zero(field: Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, v: i64) -> Self {
        match field {
            Field::Rational => FieldScalar::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => FieldScalar::Prime {
                value: reduce_bigint(&BigInt::from(v), p),
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Self {
        match field {
            Field::Rational => FieldScalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => FieldScalar::Prime {
                value: reduce_bigint(v, p),
                modulus: p,
            },
        }
    }

    /// Maps a rational into `field`. Reduction mod `p` fails when `p` divides
    /// the denominator.
    pub fn from_rational(field: Field, v: &BigRational) -> Result<Self> {
        match field {
            Field::Rational => Ok(FieldScalar::Rational(v.clone())),
            Field::Prime(p) => {
                let den = reduce_bigint(v.denom(), p);
                if den == 0 {
                    return Err(Error::BadPrime(p));
                }
                let num = reduce_bigint(v.numer(), p);
                Ok(FieldScalar::Prime {
                    value: mul_mod(num, pow_mod(den, p - 2, p), p),
                    modulus: p,
                })
            }
        }
    }

    /// Parses `"a"` or `"a/b"` (optionally signed) into `field`.
    pub fn parse(field: Field, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::data(format!("cannot parse {text:?} as an exact number"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::data(format!("zero denominator in {text:?}")));
        }
        Self::from_rational(field, &BigRational::new(num, den))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rational,
            FieldScalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(r) => Some(r),
            FieldScalar::Prime { .. } => None,
        }
    }

    /// Residue in `[0, p)` for prime-field values.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldScalar::Prime { value, .. } => Some(*value),
            FieldScalar::Rational(_) => None,
        }
    }

    /// True when the value is "negative" for printing purposes (rationals only).
    pub fn is_negative(&self) -> bool {
        matches!(self, FieldScalar::Rational(r) if r.is_negative())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(r.recip()),
            FieldScalar::Prime { value, modulus } => FieldScalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(num_traits::pow(r.clone(), exp as usize)),
            FieldScalar::Prime { value, modulus } => FieldScalar::Prime {
                value: pow_mod(*value, exp as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Bit size of numerator times denominator; the pivot-selection cost.
    pub(crate) fn bit_cost(&self) -> u64 {
        match self {
            FieldScalar::Rational(r) => r.numer().bits() + r.denom().bits(),
            FieldScalar::Prime { .. } => 0,
        }
    }

}

fn mismatch(a: &FieldScalar, b: &FieldScalar, op: &str) -> ! {
    panic!("{op} of scalars from different fields: {} and {}", a.field(), b.field())
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldScalar {
    type Output = FieldScalar;

    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (FieldScalar::Prime { value: a, modulus: p }, FieldScalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                FieldScalar::Prime { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => mismatch(self, rhs, "addition"),
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;

    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self + &(-rhs)
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;

    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (FieldScalar::Prime { value: a, modulus: p }, FieldScalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                FieldScalar::Prime { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => mismatch(self, rhs, "multiplication"),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(-r),
            FieldScalar::Prime { value, modulus } => FieldScalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let a = FieldScalar::parse(Field::Rational, "6/-4").unwrap();
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn prime_values_reduced() {
        let a = FieldScalar::from_i64(Field::Prime(7), -1);
        assert_eq!(a.as_residue(), Some(6));
        let half = FieldScalar::parse(Field::Prime(7), "1/2").unwrap();
        assert_eq!((&half + &half).as_residue(), Some(1));
        assert!(matches!(FieldScalar::parse(Field::Prime(7), "1/14"), Err(Error::BadPrime(7))));
    }

    #[test]
    fn inverse_roundtrip() {
        for v in 1..13 {
            let a = FieldScalar::from_i64(Field::Prime(13), v);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert!(FieldScalar::zero(Field::Rational).inv().is_none());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_field_arithmetic_panics() {
        let _ = &FieldScalar::one(Field::Rational) + &FieldScalar::one(Field::Prime(5));
    }
}
