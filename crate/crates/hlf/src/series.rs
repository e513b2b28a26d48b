//! Series generators: finitely described coefficient rules for convergence
//! experiments, and partial sums along the inverse lexicographic order.
//!
//! An element of the field may have infinite support; a generator describes
//! its coefficients by rule so that any window truncation is a genuine
//! finitely supported element. The prime-power rule p^{k(alpha)} demands a
//! basic bounded exponent net, which makes the generated series an actual
//! element of the field (and the distinguished one of its submodule).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::classify::classify_bounded;
use crate::element::LaurentElement;
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{FieldShape, NetSpec};
use crate::region::Window;

/// How coefficients are produced.
#[derive(Clone, Debug)]
pub enum GeneratorRule {
    /// Coefficient p^{k(alpha)}, zero where k(alpha) = +inf.
    PrimePowers { exponents: NetSpec },
    /// Explicit finite table; zero off the table.
    Table {
        terms: BTreeMap<MultiIndex, BigRational>,
    },
}

/// A finitely described coefficient map alpha -> K.
#[derive(Clone, Debug)]
pub struct SeriesGenerator {
    dim: usize,
    prime: BigInt,
    rule: GeneratorRule,
}

const MAX_POWER: i64 = 1 << 20;

impl SeriesGenerator {
    /// The series sum p^{k(alpha)} t^alpha for a basic bounded exponent net.
    pub fn prime_powers(
        prime: impl Into<BigInt>,
        exponents: NetSpec,
        shape: &FieldShape,
    ) -> Result<SeriesGenerator> {
        let verdict = classify_bounded(&exponents, shape)?;
        if !verdict.holds {
            return Err(Error::SupportNotBounded);
        }
        Ok(SeriesGenerator {
            dim: exponents.dim(),
            prime: prime.into(),
            rule: GeneratorRule::PrimePowers { exponents },
        })
    }

    /// A finite table of coefficients; always a legitimate element.
    pub fn table(
        dim: usize,
        prime: impl Into<BigInt>,
        terms: impl IntoIterator<Item = (MultiIndex, BigRational)>,
    ) -> SeriesGenerator {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SeriesGenerator {
            dim,
            prime: prime.into(),
            rule: GeneratorRule::Table { terms },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Result<BigRational> {
        match &self.rule {
            GeneratorRule::Table { terms } => {
                Ok(terms.get(alpha).cloned().unwrap_or_else(BigRational::zero))
            }
            GeneratorRule::PrimePowers { exponents } => match exponents.eval(alpha)? {
                ExtInt::PosInf => Ok(BigRational::zero()),
                ExtInt::NegInf => Err(Error::InvalidNetValues {
                    piece: 0,
                    found: "-inf",
                }),
                ExtInt::Fin(e) => {
                    let exp = i64::try_from(&e)
                        .ok()
                        .filter(|v| v.abs() <= MAX_POWER)
                        .ok_or_else(|| {
                            Error::Format(format!("prime power exponent {e} out of range"))
                        })?;
                    let pow = self.prime.pow(exp.unsigned_abs() as u32);
                    Ok(if exp >= 0 {
                        BigRational::from_integer(pow)
                    } else {
                        BigRational::new(BigInt::one(), pow)
                    })
                }
            },
        }
    }
}

/// The truncation s(a): all terms of the generator at indices alpha' <= a
/// (inverse lexicographic) inside the window.
pub fn partial_sum(g: &SeriesGenerator, a: &MultiIndex, window: &Window) -> Result<LaurentElement> {
    if a.dim() != g.dim {
        return Err(Error::DimensionMismatch {
            expected: g.dim,
            found: a.dim(),
        });
    }
    if window.dim() != g.dim {
        return Err(Error::DimensionMismatch {
            expected: g.dim,
            found: window.dim(),
        });
    }
    let mut terms = Vec::new();
    for point in window.iter() {
        let alpha = MultiIndex::from_i64(&point);
        if alpha > *a {
            continue;
        }
        let coeff = g.coefficient(&alpha)?;
        if !coeff.is_zero() {
            terms.push((alpha, coeff));
        }
    }
    Ok(LaurentElement::from_terms(g.dim, g.prime.clone(), terms))
}

/// The full window truncation: every window term of the generator.
pub fn window_truncation(g: &SeriesGenerator, window: &Window) -> Result<LaurentElement> {
    if window.dim() != g.dim {
        return Err(Error::DimensionMismatch {
            expected: g.dim,
            found: window.dim(),
        });
    }
    let mut terms = Vec::new();
    for point in window.iter() {
        let alpha = MultiIndex::from_i64(&point);
        let coeff = g.coefficient(&alpha)?;
        if !coeff.is_zero() {
            terms.push((alpha, coeff));
        }
    }
    Ok(LaurentElement::from_terms(g.dim, g.prime.clone(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::rational;
    use crate::net::ValueRule;
    use crate::region::{Interval, Region};

    fn mi(coords: &[i64]) -> MultiIndex {
        MultiIndex::from_i64(coords)
    }

    fn ones_on(lo: i64, hi: i64) -> SeriesGenerator {
        let terms = (lo..=hi).map(|i| (mi(&[i]), rational(1, 1)));
        SeriesGenerator::table(1, 2, terms)
    }

    #[test]
    fn truncation_keeps_indices_up_to_a() {
        let g = ones_on(0, 5);
        let s = partial_sum(&g, &mi(&[3]), &Window::new(vec![0], vec![5])).unwrap();
        assert_eq!(s.support_len(), 4); // 1 + t + t^2 + t^3
        assert_eq!(s.coeff(&mi(&[3])), rational(1, 1));
        assert!(s.coeff(&mi(&[4])).is_zero());
    }

    #[test]
    fn below_support_is_zero() {
        let g = ones_on(0, 5);
        let s = partial_sum(&g, &mi(&[-1]), &Window::new(vec![0], vec![5])).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn two_dimensional_cut_follows_invlex() {
        let terms = [
            (mi(&[0, 0]), rational(1, 1)),
            (mi(&[1, 0]), rational(1, 1)),
            (mi(&[0, 1]), rational(1, 1)),
            (mi(&[1, 1]), rational(1, 1)),
        ];
        let g = SeriesGenerator::table(2, 2, terms);
        let w = Window::new(vec![0, 0], vec![1, 1]);
        let s = partial_sum(&g, &mi(&[0, 1]), &w).unwrap();
        // alpha' <= (0,1) in inverse lex: (0,0), (1,0), (0,1)
        assert_eq!(s.support_len(), 3);
        assert!(s.coeff(&mi(&[1, 1])).is_zero());
        assert_eq!(s.coeff(&mi(&[1, 0])), rational(1, 1));
    }

    #[test]
    fn prime_power_rule_requires_bounded_net() {
        let shape = FieldShape::new(2, 1).unwrap();
        // i -> i is unbounded below on a {{.}} coordinate: rejected.
        let bad = NetSpec::new(1, vec![(Region::all(1), ValueRule::affine(vec![1], 0))]);
        assert_eq!(
            SeriesGenerator::prime_powers(3, bad, &shape).unwrap_err(),
            Error::SupportNotBounded
        );

        // i < 0 -> +inf, i >= 0 -> i is a fine bounded net for r = 0.
        let shape0 = FieldShape::new(2, 0).unwrap();
        let good = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(-1)]),
                    ValueRule::Const(ExtInt::PosInf),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::affine(vec![1], 0),
                ),
            ],
        );
        let g = SeriesGenerator::prime_powers(3, good, &shape0).unwrap();
        assert_eq!(g.coefficient(&mi(&[2])).unwrap(), rational(9, 1));
        assert!(g.coefficient(&mi(&[-1])).unwrap().is_zero());
    }
}
