//! Archimedean seminorm mode: coefficient fields R or C, scaling nets of
//! positive rationals with +inf allowed.
//!
//! Over an archimedean coefficient field the convex neighbourhoods are disks
//! of positive radius, so the admissible seminorms take the shape
//! sup |x(alpha)| / rho(alpha) with a/inf = 0. Everything stays in exact
//! rational arithmetic: coefficients are rationals and so are the radii.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::element::LaurentElement;
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::region::{check_partition, PartitionDefect, Region};

/// The radius at a region: a positive rational or +inf (no constraint).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoValue {
    Finite(BigRational),
    Infinite,
}

/// A piecewise-constant scaling net Z^d -> Q_{>0} ∪ {inf}, presented like a
/// value net on a box tiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoSpec {
    dim: usize,
    pieces: Vec<(Region, RhoValue)>,
}

impl RhoSpec {
    pub fn new(dim: usize, pieces: Vec<(Region, RhoValue)>) -> Self {
        assert!(dim >= 1);
        RhoSpec { dim, pieces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[(Region, RhoValue)] {
        &self.pieces
    }

    pub fn validate_partition(&self) -> Vec<PartitionDefect> {
        let regions: Vec<Region> = self.pieces.iter().map(|(r, _)| r.clone()).collect();
        check_partition(&regions, self.dim)
    }

    pub fn eval(&self, a: &MultiIndex) -> Result<&RhoValue> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        self.pieces
            .iter()
            .find(|(region, _)| region.contains(a))
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Format(format!("no piece covers {a}; partition is invalid")))
    }

    /// Admissibility for the archimedean topology: along *every* coordinate,
    /// finite radii must stop (the radius is +inf for all large scan values,
    /// uniformly expressible here as bounded-above boxes).
    pub fn is_admissible(&self) -> bool {
        for l in 1..=self.dim {
            for (region, value) in &self.pieces {
                if matches!(value, RhoValue::Finite(_)) && region.interval(l).hi.is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// sup over the support of |x(alpha)| / rho(alpha), with a/inf = 0. The
/// prime carried by the element is irrelevant here and ignored.
pub fn archimedean_seminorm(x: &LaurentElement, rho: &RhoSpec) -> Result<BigRational> {
    if rho.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: rho.dim(),
        });
    }
    let mut best = BigRational::zero();
    for (index, coeff) in x.terms() {
        match rho.eval(index)? {
            RhoValue::Infinite => {}
            RhoValue::Finite(r) => {
                if !r.is_positive() {
                    return Err(Error::NonpositiveRho { at: index.clone() });
                }
                let ratio = coeff.abs() / r;
                if ratio > best {
                    best = ratio;
                }
            }
        }
    }
    Ok(best)
}
