//! Coefficient rings used by the series engine.
//!
//! The engine is generic over three tiers of arithmetic:
//! [`Semiring`] (enough for products with nonnegative coefficients, e.g.
//! `BigUint`), [`Ring`] (adds subtraction) and [`Field`] (adds division by
//! integers, needed for formal `log`/`exp`).

use std::fmt::Debug;
use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Semiring: Clone + Debug + PartialEq + Zero + One + for<'a> AddAssign<&'a Self> {
    fn mul_ref(&self, other: &Self) -> Self;

    /// Embeds a small nonnegative integer.
    fn from_u64(v: u64) -> Self;
}

pub trait Ring: Semiring + for<'a> SubAssign<&'a Self> + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
}

pub trait Field: Ring {
    /// Division by a nonzero integer.
    fn div_int(&self, d: i64) -> Self;
}

impl Semiring for BigUint {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_u64(v: u64) -> Self {
        BigUint::from(v)
    }
}

impl Semiring for BigInt {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Semiring for BigRational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigRational {
    fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self / BigRational::from_integer(BigInt::from(d))
    }
}

impl Semiring for f64 {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_u64(v: u64) -> Self {
        v as f64
    }
}

impl Ring for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Field for f64 {
    fn div_int(&self, d: i64) -> Self {
        self / d as f64
    }
}
