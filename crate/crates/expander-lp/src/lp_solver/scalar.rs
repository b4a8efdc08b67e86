//! Scalar abstraction over the two arithmetic modes: exact rationals
//! and f64 with a fixed comparison tolerance.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::ratio::Rational;

/// Tolerance for every float-mode sign test.
pub const FLOAT_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when sign tests are exact rather than tolerance-based.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;
    /// Strictly positive beyond the mode tolerance.
    fn is_pos(&self) -> bool;
    /// Strictly negative beyond the mode tolerance.
    fn is_neg(&self) -> bool;
    fn is_zero_tol(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        crate::ratio::ratio_int(v)
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn is_pos(&self) -> bool {
        *self > FLOAT_TOL
    }

    fn is_neg(&self) -> bool {
        *self < -FLOAT_TOL
    }
}
