//! Arbitrary-precision integer coefficients with an inline fast path.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// An integer that stays in a machine word until an operation overflows.
///
/// The representation is normalized: a value that fits in `i64` is always
/// stored as `Small`, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small(0);
    pub const ONE: Coeff = Coeff::Small(1);

    fn from_big(b: BigInt) -> Coeff {
        match b.to_i64() {
            Some(v) => Coeff::Small(v),
            None => Coeff::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(v) => BigInt::from(*v),
            Coeff::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(v) => *v < 0,
            Coeff::Big(b) => b.sign() == num_bigint::Sign::Minus,
        }
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Value modulo `m` in `0..m`.
    pub fn rem_euclid(&self, m: u64) -> u64 {
        match self {
            Coeff::Small(v) => v.rem_euclid(m as i64) as u64,
            Coeff::Big(b) => {
                let r = b % BigInt::from(m);
                let r = if r.sign() == num_bigint::Sign::Minus { r + BigInt::from(m) } else { r };
                r.to_u64().unwrap_or(0)
            }
        }
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<BigInt> for Coeff {
    fn from(b: BigInt) -> Self {
        Coeff::from_big(b)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(x), Coeff::Small(y)) = (self, rhs) {
            if let Some(s) = x.checked_add(*y) {
                return Coeff::Small(s);
            }
        }
        Coeff::from_big(self.to_big() + rhs.to_big())
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(x), Coeff::Small(y)) = (self, rhs) {
            if let Some(s) = x.checked_mul(*y) {
                return Coeff::Small(s);
            }
        }
        Coeff::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(v) => match v.checked_neg() {
                Some(n) => Coeff::Small(n),
                None => Coeff::Big(-BigInt::from(*v)),
            },
            Coeff::Big(b) => Coeff::from_big(-b),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coeff::Small(x), Coeff::Small(y)) => x.cmp(y),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::ZERO
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = &Coeff::from(i64::MAX) + &Coeff::ONE;
        assert!(matches!(big, Coeff::Big(_)));
        let back = &big + &Coeff::from(-1);
        assert_eq!(back, Coeff::Small(i64::MAX));
        let sq = &Coeff::from(i64::MAX) * &Coeff::from(i64::MAX);
        assert!(matches!(sq, Coeff::Big(_)));
        assert_eq!(-&Coeff::from(i64::MIN), &Coeff::from(i64::MAX) + &Coeff::ONE);
    }

    #[test]
    fn rem_euclid_negative() {
        assert_eq!(Coeff::from(-3).rem_euclid(8), 5);
        let big = &Coeff::from(i64::MIN) * &Coeff::from(2);
        assert_eq!(big.rem_euclid(8), 0);
    }
}
