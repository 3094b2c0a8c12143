//! The common interface of the two rings the library works in.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};

/// A ring with exact arbitrary-precision coordinates.
///
/// Multiplication need not commute. Divisibility comes in two flavours:
/// `x ∈ R·a` (the left ideal generated by `a`) and `x ∈ a·R` (the right
/// ideal). In a commutative ring both coincide.
///
/// `Ord` is lexicographic on coordinates; it is what makes value sets and
/// coset tables reproducible.
pub trait Ring:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + serde::Serialize
    + for<'de> serde::Deserialize<'de>
    + FromStr<Err = Error>
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Short name used in CLI flags and JSON (`gauss`, `quat`).
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn coords(&self) -> Vec<BigInt>;
    fn norm(&self) -> BigInt;

    /// True when the element lies in the image of the integers.
    fn is_rational_integer(&self) -> bool;

    /// True when `x·a = a·x` for every `x`.
    fn is_central(&self) -> bool;

    /// Is `x ∈ R·a`?
    fn in_left_ideal(x: &Self, a: &Self) -> Result<bool>;

    /// Is `x ∈ a·R`?
    fn in_right_ideal(x: &Self, a: &Self) -> Result<bool>;

    /// Canonical representative of the class of `x` modulo `a·R`.
    /// Two elements get the same representative iff their difference is in `a·R`.
    fn right_ideal_residue(x: &Self, a: &Self) -> Result<Self>;

    /// Number of classes of `R` modulo `a·R`.
    fn right_ideal_index(a: &Self) -> Result<BigInt>;

    /// `q` with `x = z·q`, if one exists. `z` must be central.
    fn exact_quotient(x: &Self, z: &Self) -> Result<Option<Self>>;

    /// All elements with every coordinate in `[-radius, radius]`, ordered by
    /// norm and then lexicographically.
    fn coordinate_box(radius: i64) -> Vec<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }
}

/// Nearest integer to `num/den` with halves rounded toward negative infinity.
/// `den` must be positive.
pub(crate) fn round_half_down(num: &BigInt, den: &BigInt) -> BigInt {
    // ceil((2·num − den) / (2·den))
    let two_den: BigInt = den * 2;
    let shifted: BigInt = num * 2 - den;
    -(-shifted).div_floor(&two_den)
}

pub(crate) fn nonzero<R: Ring>(a: &R) -> Result<()> {
    if a.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(())
    }
}

/// Implements the by-value and by-reference arithmetic operators for a ring
/// type in terms of `fn(&T, &T) -> T` kernels.
macro_rules! ring_ops {
    ($t:ty, add = $add:path, sub = $sub:path, mul = $mul:path, neg = $neg:path) => {
        ring_ops!(@bin $t, Add, add, $add);
        ring_ops!(@bin $t, Sub, sub, $sub);
        ring_ops!(@bin $t, Mul, mul, $mul);
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $neg(&self)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $neg(self)
            }
        }
    };
    (@bin $t:ty, $tr:ident, $m:ident, $f:path) => {
        impl std::ops::$tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $f(&self, &rhs)
            }
        }
        impl<'a> std::ops::$tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t {
                $f(&self, rhs)
            }
        }
        impl<'a, 'b> std::ops::$tr<&'b $t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: &'b $t) -> $t {
                $f(self, rhs)
            }
        }
    };
}
pub(crate) use ring_ops;

/// Serializes through `Display` so JSON carries the text encoding.
macro_rules! serialize_as_text {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}
pub(crate) use serialize_as_text;
