//! Coefficient fields.
//!
//! Every algorithm in this crate is written against [`Field`]. Only exact
//! fields implement it: Buchberger's algorithm and the dimension tests built on
//! it decide membership by comparing coefficients with zero, which is
//! meaningless in floating point.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num};

/// An exact field of characteristic zero.
pub trait Field:
    Num
    + Neg<Output = Self>
    + Clone
    + Eq
    + PartialOrd
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when the value is an integer (used by the printer to drop `/1`).
    fn is_integral(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every field contains the integers")
    }
}

impl Field for BigRational {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Machine-word rationals. Fast, but arithmetic panics on overflow; only
/// suitable for small inputs.
impl Field for Ratio<i64> {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Field for Ratio<i128> {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}
