//! Linearly ordered fields with exact arithmetic.
//!
//! Two backends are provided: [`Rational`] (arbitrary-precision fractions)
//! and [`RatFunc`], the field of rational functions in a positive
//! infinitesimal `e`, ordered by their behaviour as `e -> 0+`. The second is
//! non-Archimedean: `0 < e < 1/k` for every positive integer `k`.
//!
//! Every value is normalized on construction, so equality and hashing are
//! structural.

mod epsilon_poly;
mod ratfunc;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

pub use epsilon_poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;

use crate::error::Result;

/// Sign of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An exact linearly ordered field.
///
/// `Ord` must agree with `signum(a - b)`, and be compatible with the field
/// operations: `a < b` implies `a + c < b + c`, and `a < b`, `c > 0` implies
/// `a * c < b * c`.
pub trait OrderedField:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
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
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Field tag used by the instance format.
    const TAG: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> Sign;
    /// Multiplicative inverse; fails with `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self>;
    /// Parses a scalar literal of this field.
    fn parse_literal(literal: &str) -> Result<Self>;

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn is_positive(&self) -> bool {
        self.signum() == Sign::Positive
    }

    fn is_negative(&self) -> bool {
        self.signum() == Sign::Negative
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Canonical literal; `parse_literal(render())` is the identity.
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Exact `1/2`, used by symmetrization and completing the square.
pub fn half<F: OrderedField>() -> F {
    F::from_i64(2).inv().expect("2 is invertible in characteristic zero")
}
