//! Exact half-integers.
//!
//! Gromov products, the 4-point constant and every radius derived from them
//! live on the lattice `Z/2`. Storing twice the value keeps all comparisons
//! and arithmetic exact.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { doubled: 2 * v }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn floor(self) -> i64 {
        self.doubled.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        -(-self.doubled).div_euclid(2)
    }

    /// Floor clamped at zero, as used for ball radii.
    pub fn radius(self) -> u32 {
        self.floor().max(0) as u32
    }

    pub fn to_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<u32> for HalfInt {
    fn from(v: u32) -> Self {
        HalfInt::from_int(v as i64)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + rhs.doubled)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - rhs.doubled)
    }
}

impl Mul<HalfInt> for i64 {
    type Output = HalfInt;
    fn mul(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self * rhs.doubled)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}
