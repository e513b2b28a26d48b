//! Integers extended by +inf and -inf.
//!
//! These are the values taken by valuation nets and by p-adic valuations:
//! a lattice exponent of -inf at an index means the whole scalar field is
//! allowed there, +inf means only zero. The value `q^(-inf) = 0` convention
//! for seminorms lives in [`crate::seminorm::QExp`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// An arbitrary-precision integer extended with +inf and -inf.
///
/// The derived ordering is total with `NegInf < Fin(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(BigInt),
    PosInf,
}

impl ExtInt {
    pub fn fin<T: Into<BigInt>>(v: T) -> Self {
        ExtInt::Fin(v.into())
    }

    pub fn zero() -> Self {
        ExtInt::Fin(BigInt::from(0))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn as_fin(&self) -> Option<&BigInt> {
        match self {
            ExtInt::Fin(v) => Some(v),
            _ => None,
        }
    }

    /// Sum with the absorbing conventions: a finite value plus an infinity is
    /// that infinity. `(+inf) + (-inf)` is an error, never a silent choice.
    pub fn checked_add(&self, other: &ExtInt) -> Result<ExtInt> {
        use ExtInt::*;
        match (self, other) {
            (Fin(a), Fin(b)) => Ok(Fin(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::IndeterminateSum { pieces: None }),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    /// `self - other`, i.e. `checked_add` against the negation.
    pub fn checked_sub(&self, other: &ExtInt) -> Result<ExtInt> {
        self.checked_add(&other.clone().negated())
    }

    pub fn negated(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Fin(v) => ExtInt::Fin(-v),
        }
    }

    /// `1 - self` with `1 - (-inf) = +inf` and `1 - (+inf) = -inf`.
    ///
    /// This is the exponent map of the pseudo-polar and is total: the
    /// conventions p^(-inf) = K and p^(+inf) = 0 make both edge cases exact.
    pub fn one_minus(&self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Fin(v) => ExtInt::Fin(BigInt::from(1) - v),
        }
    }

    pub fn max(self, other: ExtInt) -> ExtInt {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtInt) -> ExtInt {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn cmp_int(&self, other: &BigInt) -> Ordering {
        match self {
            ExtInt::NegInf => Ordering::Less,
            ExtInt::PosInf => Ordering::Greater,
            ExtInt::Fin(v) => v.cmp(other),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(BigInt::from(v))
    }
}

impl From<BigInt> for ExtInt {
    fn from(v: BigInt) -> Self {
        ExtInt::Fin(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::PosInf => write!(f, "+inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Free-function form of [`ExtInt::checked_add`].
pub fn extint_add(a: &ExtInt, b: &ExtInt) -> Result<ExtInt> {
    a.checked_add(b)
}
