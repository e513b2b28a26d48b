//! Multi-indices of Z^d with the inverse lexicographic order, and index
//! slices with a fixed coordinate tail.
//!
//! The ambient field K{{t_1}}..{{t_r}}((t_{r+1}))..((t_{n-1})) indexes its
//! coefficients by alpha in Z^(n-1). Coordinate positions are 1-based
//! throughout, matching the parameter numbering t_1, ..., t_{n-1}.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// An element of Z^d. `Ord` is the inverse lexicographic order: the *last*
/// differing coordinate decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<BigInt>);

impl MultiIndex {
    pub fn new(coords: Vec<BigInt>) -> Self {
        assert!(!coords.is_empty(), "multi-index must have dimension >= 1");
        MultiIndex(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    /// 1-based coordinate access.
    pub fn coord(&self, l: usize) -> &BigInt {
        &self.0[l - 1]
    }

    pub fn negated(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                diff => return diff,
            }
        }
        // Equal on the common suffix; longer index compares by length so the
        // order stays total even across dimensions.
        self.0.len().cmp(&other.0.len())
    }
}

/// Inverse lexicographic comparison with an explicit dimension check.
pub fn invlex_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.cmp(b))
}

/// A slice of the index set: coordinates l+1..d are pinned to `fixed_tail`,
/// and coordinate l is either pinned to `scan_value` or left free. With
/// `scan_value` present this is the slice scanned by the limit conditions;
/// without it, the slice over which per-tail bounds are taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSpec {
    /// 1-based coordinate position.
    pub l: usize,
    /// Values of coordinates l+1, ..., d.
    pub fixed_tail: Vec<BigInt>,
    /// Pin for coordinate l, if any.
    pub scan_value: Option<BigInt>,
}

impl SliceSpec {
    pub fn contains(&self, a: &MultiIndex) -> Result<bool> {
        let d = a.dim();
        if self.l == 0 || self.l > d || self.fixed_tail.len() != d - self.l {
            return Err(Error::DimensionMismatch {
                expected: d.saturating_sub(self.l),
                found: self.fixed_tail.len(),
            });
        }
        for (offset, t) in self.fixed_tail.iter().enumerate() {
            if a.coord(self.l + 1 + offset) != t {
                return Ok(false);
            }
        }
        if let Some(k) = &self.scan_value {
            if a.coord(self.l) != k {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
