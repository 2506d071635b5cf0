//! The extended real line `[-inf, +inf]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An extended real number.
///
/// Variant order gives the total order `NegInf < Finite(_) < PosInf`;
/// finite values are never NaN (constructors reject it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

pub use ExtReal::{Finite, NegInf, PosInf};

impl ExtReal {
    /// Maps `f64` infinities onto the infinite variants. NaN is rejected.
    pub fn from_f64(x: f64) -> Result<ExtReal> {
        if x.is_nan() {
            Err(Error::Domain("NaN is not an extended real".into()))
        } else if x == f64::INFINITY {
            Ok(PosInf)
        } else if x == f64::NEG_INFINITY {
            Ok(NegInf)
        } else {
            Ok(Finite(x))
        }
    }

    /// Lossy view as `f64` using IEEE infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(x) => x,
            PosInf => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(x) => Some(x),
            _ => None,
        }
    }

    /// Sum; `+inf + -inf` is an error rather than NaN.
    pub fn checked_add(self, other: ExtReal) -> Result<ExtReal> {
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => {
                Err(Error::Domain("inf - inf is undefined".into()))
            }
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    pub fn checked_sub(self, other: ExtReal) -> Result<ExtReal> {
        self.checked_add(-other)
    }

    /// Product with a finite scalar. `0 * inf` is taken as 0, the usual
    /// convention for support functions of scaled sets.
    pub fn scale(self, c: f64) -> ExtReal {
        match self {
            Finite(x) => Finite(c * x),
            _ if c == 0.0 => Finite(0.0),
            PosInf if c > 0.0 => PosInf,
            PosInf => NegInf,
            NegInf if c > 0.0 => NegInf,
            NegInf => PosInf,
        }
    }
}

impl std::ops::Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            NegInf => PosInf,
            Finite(x) => Finite(-x),
            PosInf => NegInf,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl ExtReal {
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            NegInf => 0,
            Finite(_) => 1,
            PosInf => 2,
        }
    }
}

impl From<f64> for ExtReal {
    /// Panics on NaN; use [`ExtReal::from_f64`] for untrusted input.
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x).expect("NaN passed as ExtReal")
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("inf"),
            Finite(x) => write!(f, "{x}"),
        }
    }
}
