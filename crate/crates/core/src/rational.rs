//! Reduced fractions used for every density value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A fraction kept in lowest terms with a positive denominator.
///
/// Serialized as `{"num": .., "den": ..}`, never as a decimal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(Ratio<i64>);

impl ExactRational {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        ExactRational(Ratio::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    /// Compares `count` against `self * n` by cross-multiplication.
    pub fn cmp_scaled(&self, count: u64, n: u64) -> Ordering {
        let lhs = i128::from(count) * i128::from(self.den());
        let rhs = i128::from(self.num()) * i128::from(n);
        lhs.cmp(&rhs)
    }

    /// For display only.
    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ExactRational(self.0 * rhs.0)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: i64,
    den: i64,
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { num: self.num(), den: self.den() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.den <= 0 {
            return Err(serde::de::Error::custom("denominator must be positive"));
        }
        if num_integer::gcd(w.num, w.den) != 1 {
            return Err(serde::de::Error::custom("fraction is not in lowest terms"));
        }
        Ok(ExactRational::new(w.num, w.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = ExactRational::new(4, -6);
        assert_eq!((r.num(), r.den()), (-2, 3));
        assert_eq!(ExactRational::new(2, 6), ExactRational::new(1, 3));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(ExactRational::new(2, 7) < ExactRational::new(1, 3));
        assert!(ExactRational::new(1, 5) < ExactRational::new(2, 7));
    }

    #[test]
    fn scaled_comparison() {
        let d = ExactRational::new(2, 7);
        assert_eq!(d.cmp_scaled(2, 7), Ordering::Equal);
        assert_eq!(d.cmp_scaled(4, 11), Ordering::Greater);
        assert_eq!(d.cmp_scaled(3, 11), Ordering::Less);
    }
}
