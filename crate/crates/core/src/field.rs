//! Coefficient fields.
//!
//! Everything in the kernel is exact: the default field is `BigRational`,
//! and `Fp<P>` provides prime fields for faster runs.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field usable as the scalar type of presentations, windows and
/// linear algebra.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Human-readable field tag, `QQ` or `GF(p)`.
    fn tag() -> String;

    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    /// Image of `num/den`; `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Used only for pretty printing (`a - b` instead of `a + -b`).
    fn is_negative(&self) -> bool {
        false
    }
}

impl Field for BigRational {
    fn tag() -> String {
        "QQ".to_string()
    }

    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Prime field of characteristic `P`. Primality of `P` is the caller's
/// responsibility; `P` must fit in 32 bits so products never overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in GF({P})");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn tag() -> String {
        format!("GF({P})")
    }

    fn characteristic() -> u64 {
        P
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            r.to_u64().expect("residue fits in u64")
        };
        let d = reduce(den);
        if d == 0 {
            return None;
        }
        Some(Fp(reduce(num)) / Fp(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b) * b, a);
        assert_eq!((-a).value(), 4);
        assert_eq!(F7::from_i64(-1).value(), 6);
        assert_eq!(
            F7::from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap().value(),
            4
        );
        assert!(F7::from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
    }

    #[test]
    fn rational_field_basics() {
        let half = BigRational::from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half.clone() + half.clone(), BigRational::one());
        assert!(Field::is_negative(&-half.clone()));
        assert_eq!(half.inverse(), Some(BigRational::from_i64(2)));
        assert!(BigRational::zero().inverse().is_none());
    }
}
