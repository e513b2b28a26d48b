//! Admissible seminorms as exact q-exponents.
//!
//! An admissible seminorm attached to a net n takes the value
//! ||x|| = sup over alpha of |x(alpha)| q^{n(alpha)}, which for finitely
//! supported x is exactly q^e with e in Z ∪ {-inf} (q^{-inf} = 0). Seminorm
//! values are therefore represented by their exponent and never by a float:
//! every comparison below is exact.
//!
//! Two independent routes compute the same value: the closed-form supremum
//! ([`seminorm_eval`]) and the gauge of the lattice via a scalar membership
//! search ([`gauge_eval`]). Their agreement is a theorem; the test suites
//! treat the gauge as the anti-regression oracle for the closed form.

use num_bigint::BigInt;

use crate::element::{val_p, LaurentElement};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{NetSpec, ValueRule};
use crate::region::Region;

/// A seminorm value q^e, e in Z ∪ {-inf}; the exponent -inf represents 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QExp(ExtInt);

impl QExp {
    /// The value 0 = q^(-inf).
    pub fn zero_value() -> Self {
        QExp(ExtInt::NegInf)
    }

    pub fn from_exponent(e: impl Into<BigInt>) -> Self {
        QExp(ExtInt::Fin(e.into()))
    }

    /// Builds from an extended integer; +inf is not a seminorm value.
    pub fn from_extint(e: ExtInt) -> Result<Self> {
        if e == ExtInt::PosInf {
            return Err(Error::InvalidNetValues {
                piece: 0,
                found: "+inf",
            });
        }
        Ok(QExp(e))
    }

    pub fn exponent(&self) -> &ExtInt {
        &self.0
    }

    pub fn is_zero_value(&self) -> bool {
        self.0 == ExtInt::NegInf
    }

    /// Multiplying the argument by a scalar of valuation v scales the value
    /// by q^{-v}: the exponent shifts by -v.
    pub fn shifted(&self, delta: &BigInt) -> QExp {
        match &self.0 {
            ExtInt::NegInf => QExp(ExtInt::NegInf),
            ExtInt::Fin(e) => QExp(ExtInt::Fin(e + delta)),
            ExtInt::PosInf => unreachable!("+inf is not a seminorm exponent"),
        }
    }
}

impl std::fmt::Display for QExp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.0 {
            ExtInt::NegInf => write!(f, "0"),
            e => write!(f, "q^{e}"),
        }
    }
}

/// Rejects nets carrying +inf values (those present submodules, not open
/// lattices, and q^{+inf} is undefined).
fn require_no_pos_inf(net: &NetSpec) -> Result<()> {
    for (piece, (_, rule)) in net.pieces().iter().enumerate() {
        if matches!(rule, ValueRule::Const(ExtInt::PosInf)) {
            return Err(Error::InvalidNetValues {
                piece,
                found: "+inf",
            });
        }
    }
    Ok(())
}

/// Closed form: exponent = max over the support of (n(alpha) - v(x(alpha))).
/// The zero element has value 0 (empty supremum).
pub fn seminorm_eval(net: &NetSpec, x: &LaurentElement) -> Result<QExp> {
    if net.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: net.dim(),
        });
    }
    require_no_pos_inf(net)?;
    let mut best = ExtInt::NegInf;
    for (index, coeff) in x.terms() {
        let n = net.eval(index)?;
        let v = val_p(coeff, x.prime());
        // n in Z ∪ {-inf}, v finite on stored terms: never indeterminate
        let e = n.checked_sub(&v).expect("net value is never +inf here");
        if e > best {
            best = e;
        }
    }
    QExp::from_extint(best)
}

/// Gauge of the lattice: ||x|| = inf over scalars a with x in a*Lambda of
/// |a|. Scalars run over powers of p; x lies in p^m Lambda iff every
/// coefficient valuation is at least m + n(alpha). The largest such m is
/// located by a bracketed search on the monotone membership predicate, a
/// route independent of the closed-form supremum.
///
/// The zero element lies in every a*Lambda, so its gauge is 0; it is
/// accepted here for parity with [`seminorm_eval`].
pub fn gauge_eval(net: &NetSpec, x: &LaurentElement) -> Result<QExp> {
    if net.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: net.dim(),
        });
    }
    require_no_pos_inf(net)?;
    if x.is_zero() {
        return Ok(QExp::zero_value());
    }

    let mut constraints: Vec<(ExtInt, ExtInt)> = Vec::with_capacity(x.support_len());
    for (index, coeff) in x.terms() {
        constraints.push((val_p(coeff, x.prime()), net.eval(index)?));
    }

    let membership = |m: &BigInt| -> bool {
        constraints.iter().all(|(v, n)| match n {
            ExtInt::NegInf => true,
            ExtInt::Fin(n) => v.cmp_int(&(m + n)) != std::cmp::Ordering::Less,
            ExtInt::PosInf => unreachable!(),
        })
    };

    let finite_nets: Vec<&BigInt> = constraints.iter().filter_map(|(_, n)| n.as_fin()).collect();
    if finite_nets.is_empty() {
        // x lies in a*Lambda for every a: the gauge is 0.
        return Ok(QExp::zero_value());
    }
    let vals: Vec<&BigInt> = constraints
        .iter()
        .map(|(v, _)| v.as_fin().expect("stored coefficients are nonzero"))
        .collect();
    let min_val = vals.iter().min().unwrap();
    let max_val = vals.iter().max().unwrap();
    let max_net = finite_nets.iter().max().unwrap();
    let min_net = finite_nets.iter().min().unwrap();

    let mut lo: BigInt = *min_val - *max_net - 1; // membership certain
    let mut hi: BigInt = *max_val - *min_net + 1; // membership impossible
    if !membership(&lo) || membership(&hi) {
        return Err(Error::GaugeInfinite);
    }
    while &hi - &lo > BigInt::from(1) {
        let mid = (&lo + &hi) / 2;
        if membership(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // |p^m| = q^{-m}; the infimum is attained at the largest admissible m.
    Ok(QExp::from_exponent(-lo))
}

/// Product seminorm of finitely many components: the maximum.
pub fn product_seminorm(components: &[QExp]) -> Result<QExp> {
    components.iter().max().cloned().ok_or(Error::EmptyProduct)
}

/// The exact supremum of n(alpha) - k(alpha) over Z^d, with an attaining
/// index when the supremum is finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupDifference {
    pub sup: ExtInt,
    pub attained_at: Option<MultiIndex>,
}

fn intersection(a: &Region, b: &Region) -> Option<Region> {
    let mut intervals = Vec::with_capacity(a.dim());
    for (ia, ib) in a.intervals.iter().zip(&b.intervals) {
        let lo = match (&ia.lo, &ib.lo) {
            (Some(x), Some(y)) => Some(std::cmp::max(x, y).clone()),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        let hi = match (&ia.hi, &ib.hi) {
            (Some(x), Some(y)) => Some(std::cmp::min(x, y).clone()),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        if let (Some(lo), Some(hi)) = (&lo, &hi) {
            if lo > hi {
                return None;
            }
        }
        intervals.push(crate::region::Interval { lo, hi });
    }
    Some(Region::new(intervals))
}

/// Supremum over Z^d of the difference of two nets, computed symbolically
/// per pair of intersecting pieces. A region pair where the difference is
/// (+inf) - (+inf) or (-inf) - (-inf) is indeterminate and reported.
///
/// When the first net presents an open lattice and the second a basic
/// bounded submodule, the supremum is finite (or -inf): this is the bound
/// making every bounded set seminorm-bounded.
pub fn bounded_sup_difference(n_net: &NetSpec, k_net: &NetSpec) -> Result<SupDifference> {
    if n_net.dim() != k_net.dim() {
        return Err(Error::DimensionMismatch {
            expected: n_net.dim(),
            found: k_net.dim(),
        });
    }
    let dim = n_net.dim();
    let mut best = SupDifference {
        sup: ExtInt::NegInf,
        attained_at: None,
    };

    for (i, (rn, rule_n)) in n_net.pieces().iter().enumerate() {
        for (j, (rk, rule_k)) in k_net.pieces().iter().enumerate() {
            let Some(cell) = intersection(rn, rk) else {
                continue;
            };

            use ValueRule::*;
            let candidate = match (rule_n, rule_k) {
                (Const(ExtInt::PosInf), Const(ExtInt::PosInf))
                | (Const(ExtInt::NegInf), Const(ExtInt::NegInf)) => {
                    return Err(Error::IndeterminateSum {
                        pieces: Some((i, j)),
                    });
                }
                (Const(ExtInt::NegInf), _) | (_, Const(ExtInt::PosInf)) => (ExtInt::NegInf, None),
                (Const(ExtInt::PosInf), _) | (_, Const(ExtInt::NegInf)) => (ExtInt::PosInf, None),
                _ => affine_difference_sup(rule_n, rule_k, &cell, dim),
            };
            if candidate.0 > best.sup {
                best = SupDifference {
                    sup: candidate.0,
                    attained_at: candidate.1,
                };
            }
        }
    }
    Ok(best)
}

/// Supremum of (rule_n - rule_k)(alpha) over a box, both rules finite, with
/// the attaining corner.
fn affine_difference_sup(
    rule_n: &ValueRule,
    rule_k: &ValueRule,
    cell: &Region,
    dim: usize,
) -> (ExtInt, Option<MultiIndex>) {
    let coeff = |rule: &ValueRule, m: usize| -> BigInt {
        match rule {
            ValueRule::Affine { coeffs, .. } => coeffs[m].clone(),
            ValueRule::Const(_) => BigInt::from(0),
        }
    };
    let offset = |rule: &ValueRule| -> BigInt {
        match rule {
            ValueRule::Affine { offset, .. } => offset.clone(),
            ValueRule::Const(ExtInt::Fin(v)) => v.clone(),
            ValueRule::Const(_) => unreachable!("infinite constants handled by caller"),
        }
    };

    let mut acc = offset(rule_n) - offset(rule_k);
    let mut point = Vec::with_capacity(dim);
    for m in 0..dim {
        let c = coeff(rule_n, m) - coeff(rule_k, m);
        let iv = &cell.intervals[m];
        match c.sign() {
            num_bigint::Sign::NoSign => {
                // any point of the interval attains; pick a finite end or 0
                point.push(match (&iv.lo, &iv.hi) {
                    (Some(lo), _) => lo.clone(),
                    (None, Some(hi)) => hi.clone(),
                    (None, None) => BigInt::from(0),
                });
            }
            num_bigint::Sign::Plus => match &iv.hi {
                Some(hi) => {
                    acc += &c * hi;
                    point.push(hi.clone());
                }
                None => return (ExtInt::PosInf, None),
            },
            num_bigint::Sign::Minus => match &iv.lo {
                Some(lo) => {
                    acc += &c * lo;
                    point.push(lo.clone());
                }
                None => return (ExtInt::PosInf, None),
            },
        }
    }
    (ExtInt::Fin(acc), Some(MultiIndex::new(point)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::rational;
    use crate::region::Interval;

    fn mi(coords: &[i64]) -> MultiIndex {
        MultiIndex::from_i64(coords)
    }

    /// Net with n(2) = 1, n(5) = 0, -inf elsewhere.
    fn two_point_net() -> NetSpec {
        NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(1)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
                (
                    Region::new(vec![Interval::bounded(2, 2)]),
                    ValueRule::constant(ExtInt::fin(1)),
                ),
                (
                    Region::new(vec![Interval::bounded(3, 4)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
                (
                    Region::new(vec![Interval::bounded(5, 5)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
                (
                    Region::new(vec![Interval::at_least(6)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
            ],
        )
    }

    #[test]
    fn supremum_over_two_terms() {
        // x = t^2 + p^3 t^5 with p = 2: exponents 1 - 0 = 1 and 0 - 3 = -3.
        let x = LaurentElement::from_terms(
            1,
            2,
            [(mi(&[2]), rational(1, 1)), (mi(&[5]), rational(8, 1))],
        );
        let net = two_point_net();
        assert_eq!(seminorm_eval(&net, &x).unwrap(), QExp::from_exponent(1));
        assert_eq!(gauge_eval(&net, &x).unwrap(), QExp::from_exponent(1));
    }

    #[test]
    fn zero_element_has_value_zero() {
        let net = two_point_net();
        let zero = LaurentElement::zero(1, 2);
        assert!(seminorm_eval(&net, &zero).unwrap().is_zero_value());
        assert!(gauge_eval(&net, &zero).unwrap().is_zero_value());
    }

    #[test]
    fn neg_inf_net_value_kills_the_term() {
        let net = two_point_net();
        let x = LaurentElement::monomial(2, mi(&[0]), rational(1, 1));
        assert!(seminorm_eval(&net, &x).unwrap().is_zero_value());
        assert!(gauge_eval(&net, &x).unwrap().is_zero_value());
    }

    #[test]
    fn gauge_examples_on_the_unit_lattice() {
        let net = NetSpec::constant(1, ExtInt::zero());
        let one = LaurentElement::monomial(2, mi(&[0]), rational(1, 1));
        assert_eq!(gauge_eval(&net, &one).unwrap(), QExp::from_exponent(0));
        let p = LaurentElement::monomial(2, mi(&[0]), rational(2, 1));
        assert_eq!(gauge_eval(&net, &p).unwrap(), QExp::from_exponent(-1));
    }

    #[test]
    fn pos_inf_nets_are_rejected() {
        let net = NetSpec::constant(1, ExtInt::PosInf);
        let x = LaurentElement::monomial(2, mi(&[0]), rational(1, 1));
        assert!(matches!(
            seminorm_eval(&net, &x),
            Err(Error::InvalidNetValues { found: "+inf", .. })
        ));
    }

    #[test]
    fn product_seminorm_is_the_max() {
        let values = [
            QExp::from_exponent(0),
            QExp::from_exponent(-3),
            QExp::zero_value(),
        ];
        assert_eq!(product_seminorm(&values).unwrap(), QExp::from_exponent(0));
        assert!(product_seminorm(&[QExp::zero_value(), QExp::zero_value()])
            .unwrap()
            .is_zero_value());
        assert_eq!(
            product_seminorm(&[QExp::from_exponent(4)]).unwrap(),
            QExp::from_exponent(4)
        );
        assert_eq!(product_seminorm(&[]).unwrap_err(), Error::EmptyProduct);
    }

    #[test]
    fn sup_difference_finite_cases() {
        // n: i >= 1 -> -inf, i <= 0 -> 0; k: i < 0 -> +inf, i >= 0 -> 0.
        let n = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(0)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
                (
                    Region::new(vec![Interval::at_least(1)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
            ],
        );
        let k = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(-1)]),
                    ValueRule::Const(ExtInt::PosInf),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
            ],
        );
        let result = bounded_sup_difference(&n, &k).unwrap();
        assert_eq!(result.sup, ExtInt::zero());
        assert_eq!(result.attained_at, Some(mi(&[0])));
    }

    #[test]
    fn sup_difference_decaying_lattice_vs_unit_ball() {
        // n: i < 0 -> 0, i >= 0 -> -i; k constant 0: sup = 0.
        let n = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(-1)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::affine(vec![-1], 0),
                ),
            ],
        );
        let k = NetSpec::constant(1, ExtInt::zero());
        let result = bounded_sup_difference(&n, &k).unwrap();
        assert_eq!(result.sup, ExtInt::zero());
    }

    #[test]
    fn sup_difference_unbounded_direction_flags_pos_inf() {
        // n grows along +i while k stays constant: sup = +inf.
        let n = NetSpec::new(1, vec![(Region::all(1), ValueRule::affine(vec![1], 0))]);
        let k = NetSpec::constant(1, ExtInt::zero());
        let result = bounded_sup_difference(&n, &k).unwrap();
        assert_eq!(result.sup, ExtInt::PosInf);
        assert_eq!(result.attained_at, None);
    }

    #[test]
    fn sup_difference_indeterminate_pair() {
        let n = NetSpec::constant(1, ExtInt::NegInf);
        let k = NetSpec::constant(1, ExtInt::NegInf);
        assert_eq!(
            bounded_sup_difference(&n, &k).unwrap_err(),
            Error::IndeterminateSum {
                pieces: Some((0, 0))
            }
        );
    }
}
