use std::fmt;

use serde::{Serialize, Serializer};

/// Krull dimension, with `MinusInfinity` for the empty variety or the zero
/// module. Every bound `dim <= c` holds vacuously for `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    MinusInfinity,
    Finite(i64),
}

impl Dimension {
    pub fn finite(self) -> Option<i64> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::MinusInfinity => None,
        }
    }

    pub fn is_empty(self) -> bool {
        self == Dimension::MinusInfinity
    }

    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Dimension::MinusInfinity => true,
            Dimension::Finite(d) => d <= bound,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::MinusInfinity => f.write_str("-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dimension::MinusInfinity => s.serialize_str("-inf"),
            Dimension::Finite(d) => s.serialize_i64(*d),
        }
    }
}

/// Lower bound for the degrees of local cohomology: `PlusInfinity` when it
/// vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DegreeBound {
    Finite(i64),
    PlusInfinity,
}

impl DegreeBound {
    pub fn finite(self) -> Option<i64> {
        match self {
            DegreeBound::Finite(d) => Some(d),
            DegreeBound::PlusInfinity => None,
        }
    }
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::PlusInfinity => f.write_str("+inf"),
            DegreeBound::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for DegreeBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DegreeBound::PlusInfinity => s.serialize_str("+inf"),
            DegreeBound::Finite(d) => s.serialize_i64(*d),
        }
    }
}

/// Largest set of variables containing the support of no leading monomial.
pub(crate) fn max_independent_set(nvars: usize, lead_masks: &[u64]) -> usize {
    assert!(nvars < 64, "at most 63 variables");
    let mut best = 0;
    for u in 0u64..(1u64 << nvars) {
        let size = u.count_ones() as usize;
        if size <= best {
            continue;
        }
        if lead_masks.iter().all(|&m| m & !u != 0) {
            best = size;
        }
    }
    best
}
