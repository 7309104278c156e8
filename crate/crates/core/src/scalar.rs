//! The scalar abstraction used by every exact routine in the crate.
//!
//! All combinatorial decisions are signs of rational expressions, so the
//! trait is only implemented for exact rational types. Floating point types
//! enter the crate only through [`num_traits::Float`] in the geometric
//! cross-check of the crossings module.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i64(x: i64) -> Sign {
        match x.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::of_i64(i64::from(self.to_i8()) * i64::from(other.to_i8()))
    }
}

/// An exact ordered field.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + FromStr
    + PartialEq
    + Eq
    + PartialOrd
    + Ord
    + Signed
    + Send
    + Sync
    + 'static
{
    fn from_int(value: i64) -> Self;

    fn from_fraction(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Converts into an arbitrary-precision rational.
    fn to_big(&self) -> BigRational;

    /// Converts from an arbitrary-precision rational; `None` if it does not fit.
    fn from_big(value: &BigRational) -> Option<Self>;

    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn to_f64(&self) -> f64 {
        let big = self.to_big();
        match (big.numer().to_f64(), big.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => num_traits::ToPrimitive::to_f64(&big).unwrap_or(f64::NAN),
        }
    }

    /// Nearest rational with denominator `denom` (round half away from zero).
    fn from_f64_rounded(value: f64, denom: i64) -> Option<Self> {
        if !value.is_finite() || denom <= 0 {
            return None;
        }
        let scaled = (value * denom as f64).round();
        let numer = BigInt::from_f64(scaled)?;
        Self::from_big(&BigRational::new(numer, BigInt::from(denom)))
    }
}

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn to_big(&self) -> BigRational {
        self.clone()
    }

    fn from_big(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }
}

macro_rules! impl_machine_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(value: i64) -> Self {
                Ratio::from_integer(<$int>::try_from(value).expect("integer out of range"))
            }

            fn to_big(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_big(value: &BigRational) -> Option<Self> {
                let numer = <$int>::try_from(value.numer().clone()).ok()?;
                let denom = <$int>::try_from(value.denom().clone()).ok()?;
                Some(Ratio::new(numer, denom))
            }
        }
    };
}

impl_machine_ratio!(i64);
impl_machine_ratio!(i128);

/// Clears denominators of a rational vector and divides by the gcd of the numerators,
/// keeping the direction (and orientation) of the vector.
pub fn primitive_integer_vector<T: Scalar>(v: &[T]) -> Vec<T> {
    use num_integer::Integer;
    let big: Vec<BigRational> = v.iter().map(Scalar::to_big).collect();
    let lcm = big.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = big.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| {
            let q = if gcd.is_zero() { x } else { x / &gcd };
            T::from_big(&BigRational::from_integer(q)).expect("primitive vector fits")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn signs() {
        assert_eq!(BigRational::from_fraction(-3, 7).sign(), Sign::Negative);
        assert_eq!(Rational64::from_int(0).sign(), Sign::Zero);
        assert_eq!(Sign::Negative.times(Sign::Negative), Sign::Positive);
    }

    #[test]
    fn normalized_after_construction() {
        let x = BigRational::from_fraction(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn primitive_vector_keeps_orientation() {
        let v = vec![
            BigRational::from_fraction(1, 2),
            BigRational::from_fraction(-3, 4),
            BigRational::from_int(0),
        ];
        let p = primitive_integer_vector(&v);
        assert_eq!(
            p,
            vec![
                BigRational::from_int(2),
                BigRational::from_int(-3),
                BigRational::from_int(0)
            ]
        );
    }

    #[test]
    fn rounding_from_float() {
        let x = BigRational::from_f64_rounded(0.123456, 1000).unwrap();
        assert_eq!(x, BigRational::from_fraction(123, 1000));
        assert!(BigRational::from_f64_rounded(f64::NAN, 10).is_none());
    }
}
