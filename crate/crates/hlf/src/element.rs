//! Finitely supported elements x = sum x(alpha) t^alpha with exact rational
//! coefficients over Q_p.
//!
//! Invariants: no zero coefficient is ever stored, every index has the
//! ambient dimension, and the term map iterates in the inverse lexicographic
//! order (that is the `Ord` of [`MultiIndex`]). Coefficients are exact
//! rationals; the p-adic valuation is computed on demand, so every seminorm
//! and pairing below is exact with no precision tracking.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::NetSpec;

/// Exact p-adic valuation of a rational: multiplicity of p in the numerator
/// minus multiplicity in the denominator, with val(0) = +inf.
pub fn val_p(c: &BigRational, p: &BigInt) -> ExtInt {
    assert!(p >= &BigInt::from(2), "p must be a prime >= 2");
    if c.is_zero() {
        return ExtInt::PosInf;
    }
    fn multiplicity(n: &BigInt, p: &BigInt) -> BigInt {
        let mut count = BigInt::zero();
        let mut cur = n.clone();
        loop {
            let (q, r) = num_integer::Integer::div_rem(&cur, p);
            if !r.is_zero() {
                return count;
            }
            count += 1;
            cur = q;
        }
    }
    ExtInt::Fin(multiplicity(c.numer(), p) - multiplicity(c.denom(), p))
}

/// A finitely supported element of the ambient field, with its prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElement {
    dim: usize,
    prime: BigInt,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl LaurentElement {
    pub fn zero(dim: usize, prime: impl Into<BigInt>) -> Self {
        let prime = prime.into();
        assert!(prime >= BigInt::from(2));
        LaurentElement {
            dim,
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        dim: usize,
        prime: impl Into<BigInt>,
        terms: impl IntoIterator<Item = (MultiIndex, BigRational)>,
    ) -> Self {
        let mut e = LaurentElement::zero(dim, prime);
        for (idx, coeff) in terms {
            e.add_term(idx, coeff);
        }
        e
    }

    /// c * t^alpha.
    pub fn monomial(prime: impl Into<BigInt>, index: MultiIndex, coeff: BigRational) -> Self {
        let dim = index.dim();
        LaurentElement::from_terms(dim, prime, [(index, coeff)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in inverse lexicographic index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    /// The coefficient x(alpha), zero when absent.
    pub fn coeff(&self, index: &MultiIndex) -> BigRational {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, index: MultiIndex, coeff: BigRational) {
        assert_eq!(index.dim(), self.dim, "term index dimension mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &LaurentElement) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch);
        }
        Ok(())
    }

    /// Valuation of the coefficient at `index` (+inf when absent).
    pub fn coeff_valuation(&self, index: &MultiIndex) -> ExtInt {
        match self.terms.get(index) {
            None => ExtInt::PosInf,
            Some(c) => val_p(c, &self.prime),
        }
    }

    /// Bounding window of the support, padded on both sides. None for the
    /// zero element or when an index exceeds machine range.
    pub fn support_window(&self, pad: i64) -> Option<crate::region::Window> {
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        if self.terms.is_empty() {
            return None;
        }
        for index in self.terms.keys() {
            let coords = index.to_i64()?;
            for m in 0..self.dim {
                lo[m] = lo[m].min(coords[m]);
                hi[m] = hi[m].max(coords[m]);
            }
        }
        for m in 0..self.dim {
            lo[m] -= pad;
            hi[m] += pad;
        }
        Some(crate::region::Window::new(lo, hi))
    }

    /// Membership in the submodule presented by `net`: every coefficient
    /// must have valuation at least the net value at its index. Absent
    /// coefficients are zero and belong everywhere.
    pub fn in_net(&self, net: &NetSpec) -> Result<bool> {
        if net.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: net.dim(),
            });
        }
        for (index, coeff) in &self.terms {
            let required = net.eval(index)?;
            if val_p(coeff, &self.prime) < required {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coefficient-wise sum.
pub fn add(x: &LaurentElement, y: &LaurentElement) -> Result<LaurentElement> {
    x.check_compatible(y)?;
    let mut out = x.clone();
    for (index, coeff) in &y.terms {
        out.add_term(index.clone(), coeff.clone());
    }
    Ok(out)
}

/// Cauchy product; finite supports make every coefficient a finite sum.
pub fn mul(x: &LaurentElement, y: &LaurentElement) -> Result<LaurentElement> {
    x.check_compatible(y)?;
    let mut out = LaurentElement::zero(x.dim, x.prime.clone());
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let index = MultiIndex::new(
                a.coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(u, v)| u + v)
                    .collect(),
            );
            out.add_term(index, ca * cb);
        }
    }
    Ok(out)
}

/// Scalar multiple; c = 0 yields the zero element.
pub fn scalar_mul(c: &BigRational, x: &LaurentElement) -> LaurentElement {
    if c.is_zero() {
        return LaurentElement::zero(x.dim, x.prime.clone());
    }
    LaurentElement {
        dim: x.dim,
        prime: x.prime.clone(),
        terms: x.terms.iter().map(|(i, v)| (i.clone(), c * v)).collect(),
    }
}

/// x - y.
pub fn sub(x: &LaurentElement, y: &LaurentElement) -> Result<LaurentElement> {
    add(x, &scalar_mul(&-BigRational::one(), y))
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
