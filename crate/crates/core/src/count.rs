use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact nonnegative count. Serialized as a decimal string so that values
/// past `u64` survive JSON round trips.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `base^exp`.
    pub fn pow(base: u64, exp: u32) -> Self {
        BigCount(BigUint::from(base).pow(exp))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    pub fn checked_sub(&self, other: &BigCount) -> Option<BigCount> {
        if self.0 >= other.0 {
            Some(BigCount(&self.0 - &other.0))
        } else {
            None
        }
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::str::FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(BigCount)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::one(), |a, b| a * b)
    }
}

impl Serialize for BigCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
