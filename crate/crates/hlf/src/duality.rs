//! Self-duality machinery: coefficient projections, the pairing, the map
//! gamma from elements to functionals, reconstruction of representers, the
//! c-topology seminorm, and pseudo-polar membership.
//!
//! Every continuous functional on the field is pi_x = pair(x, ·) for exactly
//! one x, so functionals are represented by that x (the representer) rather
//! than by opaque closures: equality appears as coefficient equality and
//! functional seminorms become closed forms in the representer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classify::classify_compactoid;
use crate::element::{val_p, LaurentElement};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{FieldShape, NetSpec};
use crate::region::Window;
use crate::seminorm::QExp;

/// The coefficient projection pi_{a0}(x) = x(a0).
pub fn projection(a0: &MultiIndex, x: &LaurentElement) -> Result<BigRational> {
    if a0.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: a0.dim(),
        });
    }
    Ok(x.coeff(a0))
}

/// The pairing pi_x(y) = sum over alpha of x(-alpha) y(alpha): the 0-th
/// coefficient of x*y, evaluated as a finite sum over the support of y.
pub fn pair(x: &LaurentElement, y: &LaurentElement) -> Result<BigRational> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    if x.prime() != y.prime() {
        return Err(Error::PrimeMismatch);
    }
    let mut acc = BigRational::zero();
    for (alpha, y_coeff) in y.terms() {
        let x_coeff = x.coeff(&alpha.negated());
        if !x_coeff.is_zero() {
            acc += x_coeff * y_coeff;
        }
    }
    Ok(acc)
}

/// A continuous functional represented by its gamma-preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalHandle {
    representer: LaurentElement,
}

impl FunctionalHandle {
    pub fn representer(&self) -> &LaurentElement {
        &self.representer
    }

    pub fn apply(&self, y: &LaurentElement) -> Result<BigRational> {
        pair(&self.representer, y)
    }

    /// Application to the monomial t^beta, through the actual pairing.
    pub fn apply_monomial(&self, beta: &MultiIndex) -> Result<BigRational> {
        let monomial = LaurentElement::monomial(
            self.representer.prime().clone(),
            beta.clone(),
            BigRational::one(),
        );
        self.apply(&monomial)
    }
}

/// gamma(x) = pi_x. Injective on finitely supported elements: the value on
/// t^{-alpha} recovers x(alpha).
pub fn gamma(x: &LaurentElement) -> FunctionalHandle {
    FunctionalHandle {
        representer: x.clone(),
    }
}

/// Rebuilds the representer of a functional from its values on monomials:
/// x(alpha) = w(t^{-alpha}), collected over the window. `w` receives the
/// monomial exponent beta and must return the functional's value at t^beta.
pub fn reconstruct<F>(w: F, window: &Window, dim: usize, prime: impl Into<BigInt>) -> LaurentElement
where
    F: Fn(&MultiIndex) -> BigRational,
{
    assert_eq!(window.dim(), dim);
    let mut terms = Vec::new();
    for point in window.iter() {
        let alpha = MultiIndex::from_i64(&point);
        let coeff = w(&alpha.negated());
        if !coeff.is_zero() {
            terms.push((alpha, coeff));
        }
    }
    LaurentElement::from_terms(dim, prime, terms)
}

/// Convenience round trip: reconstruct the representer of a handle on a
/// window through genuine monomial applications.
pub fn reconstruct_handle(handle: &FunctionalHandle, window: &Window) -> Result<LaurentElement> {
    let dim = handle.representer.dim();
    let mut terms = Vec::new();
    for point in window.iter() {
        let alpha = MultiIndex::from_i64(&point);
        let coeff = handle.apply_monomial(&alpha.negated())?;
        if !coeff.is_zero() {
            terms.push((alpha, coeff));
        }
    }
    Ok(LaurentElement::from_terms(
        dim,
        handle.representer.prime().clone(),
        terms,
    ))
}

/// Value of the c-topology seminorm |pi_x|_B, plus the compactoid flag of B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSeminorm {
    pub value: QExp,
    /// False when B is not a basic compactoid net for the given shape; the
    /// value is still the exact supremum over B.
    pub compactoid: bool,
}

/// The seminorm of uniform convergence on B: |pi_x|_B = sup over y in B of
/// |pi_x(y)|. By the ultrametric inequality the supremum is attained at a
/// monomial y = p^{B(alpha)} t^alpha, giving the closed form
/// max over alpha of q^{-v(x(-alpha)) - B(alpha)}.
///
/// B must take values in Z ∪ {+inf}. When B is not compactoid for `shape`
/// the computation proceeds and the flag in the result is lowered.
pub fn c_seminorm(x: &LaurentElement, b: &NetSpec, shape: &FieldShape) -> Result<CSeminorm> {
    if b.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: b.dim(),
        });
    }
    // rejects -inf values and provides the flag
    let compactoid = classify_compactoid(b, shape)?.holds;

    let mut best = ExtInt::NegInf;
    for (beta, coeff) in x.terms() {
        // term at alpha = -beta of the closed form
        let alpha = beta.negated();
        let v = val_p(coeff, x.prime());
        let b_val = b.eval(&alpha)?;
        // -v - B(alpha): v finite; B in Z ∪ {+inf} makes this Z ∪ {-inf}
        let e = v
            .negated()
            .checked_sub(&b_val)
            .expect("B value is never -inf here");
        if e > best {
            best = e;
        }
    }
    Ok(CSeminorm {
        value: QExp::from_extint(best)?,
        compactoid,
    })
}

/// Evidence for a pseudo-polar membership verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolarCertificate {
    /// Every support coefficient passed the exponent test against the
    /// pseudo-polar net.
    Member { checks: usize },
    /// A concrete a = p^e t^alpha in A pairing with y to absolute value
    /// >= 1 (pairing valuation <= 0).
    Violation {
        witness: LaurentElement,
        pairing: BigRational,
        pairing_valuation: ExtInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarMembership {
    pub member: bool,
    pub certificate: PolarCertificate,
}

/// Membership of y in the pseudo-polar of the submodule presented by A:
/// equivalently, membership in the net alpha -> 1 - A(-alpha). On failure
/// the certificate is an explicit element of A whose pairing against y has
/// absolute value at least 1.
pub fn polar_membership(y: &LaurentElement, a_net: &NetSpec) -> Result<PolarMembership> {
    if a_net.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: y.dim(),
            found: a_net.dim(),
        });
    }
    let polar = a_net.pseudo_polar();
    for (beta, coeff) in y.terms() {
        let required = polar.eval(beta)?;
        let v = val_p(coeff, y.prime());
        if v >= required {
            continue;
        }
        // violation at beta: exhibit a = p^e t^{-beta} in A with
        // v(y(beta)) + e <= 0. For finite A(-beta) the polar inequality
        // gives e = A(-beta); where A is the whole field take e = -v.
        let alpha = beta.negated();
        let e = match a_net.eval(&alpha)? {
            ExtInt::Fin(a_val) => a_val,
            ExtInt::NegInf => -v.as_fin().expect("stored coefficients are nonzero").clone(),
            ExtInt::PosInf => unreachable!("polar value -inf admits every coefficient"),
        };
        let amount = pow_int(y.prime(), &e)?;
        let witness = LaurentElement::monomial(y.prime().clone(), alpha, amount);
        let pairing = pair(y, &witness)?;
        let pairing_valuation = val_p(&pairing, y.prime());
        return Ok(PolarMembership {
            member: false,
            certificate: PolarCertificate::Violation {
                witness,
                pairing,
                pairing_valuation,
            },
        });
    }
    Ok(PolarMembership {
        member: true,
        certificate: PolarCertificate::Member {
            checks: y.support_len(),
        },
    })
}

fn pow_int(p: &BigInt, e: &BigInt) -> Result<BigRational> {
    let exp = i64::try_from(e)
        .ok()
        .filter(|v| v.abs() <= (1 << 20))
        .ok_or_else(|| Error::Format(format!("prime power exponent {e} out of range")))?;
    let pow = p.pow(exp.unsigned_abs() as u32);
    Ok(if exp >= 0 {
        BigRational::from_integer(pow)
    } else {
        BigRational::new(BigInt::one(), pow)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{mul, rational};
    use crate::net::ValueRule;
    use crate::region::{Interval, Region};

    fn mi(coords: &[i64]) -> MultiIndex {
        MultiIndex::from_i64(coords)
    }

    #[test]
    fn projections_read_coefficients() {
        let x = LaurentElement::from_terms(
            2,
            2,
            [(mi(&[0, 0]), rational(5, 1)), (mi(&[1, 0]), rational(1, 1))],
        );
        assert_eq!(projection(&mi(&[0, 0]), &x).unwrap(), rational(5, 1));
        assert_eq!(projection(&mi(&[3, 3]), &x).unwrap(), BigRational::zero());

        // a0 = (2) on (1 + t)^2
        let one_plus = LaurentElement::from_terms(
            1,
            2,
            [(mi(&[0]), rational(1, 1)), (mi(&[1]), rational(1, 1))],
        );
        let square = mul(&one_plus, &one_plus).unwrap();
        assert_eq!(projection(&mi(&[2]), &square).unwrap(), rational(1, 1));
    }

    #[test]
    fn pairing_matches_examples() {
        let x = LaurentElement::monomial(2, mi(&[1, 0]), rational(1, 1));
        let y = LaurentElement::monomial(2, mi(&[-1, 0]), rational(1, 1));
        assert_eq!(pair(&x, &y).unwrap(), rational(1, 1));

        let a = LaurentElement::monomial(2, mi(&[0]), rational(2, 1));
        let b = LaurentElement::monomial(2, mi(&[0]), rational(3, 1));
        assert_eq!(pair(&a, &b).unwrap(), rational(6, 1));

        // x = t + t^2, y = p t^{-1} + t^3 over p = 5: only alpha = -1 matches.
        let x = LaurentElement::from_terms(
            1,
            5,
            [(mi(&[1]), rational(1, 1)), (mi(&[2]), rational(1, 1))],
        );
        let y = LaurentElement::from_terms(
            1,
            5,
            [(mi(&[-1]), rational(5, 1)), (mi(&[3]), rational(1, 1))],
        );
        assert_eq!(pair(&x, &y).unwrap(), rational(5, 1));
    }

    #[test]
    fn gamma_recovers_coefficients() {
        let x = LaurentElement::from_terms(
            1,
            3,
            [(mi(&[2]), rational(7, 2)), (mi(&[-1]), rational(3, 1))],
        );
        let handle = gamma(&x);
        for i in -5..=5 {
            let recovered = handle.apply_monomial(&mi(&[-i])).unwrap();
            assert_eq!(recovered, x.coeff(&mi(&[i])), "alpha = {i}");
        }
    }

    #[test]
    fn reconstruct_round_trips() {
        let x = LaurentElement::from_terms(
            1,
            2,
            [(mi(&[2]), rational(1, 1)), (mi(&[-1]), rational(2, 1))],
        );
        let rebuilt = reconstruct_handle(&gamma(&x), &Window::radius(1, 5)).unwrap();
        assert_eq!(rebuilt, x);

        let zero = reconstruct(|_| BigRational::zero(), &Window::radius(1, 3), 1, 2);
        assert!(zero.is_zero());
    }

    fn absolute_value_net() -> NetSpec {
        NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(-1)]),
                    ValueRule::affine(vec![-1], 0),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::affine(vec![1], 0),
                ),
            ],
        )
    }

    #[test]
    fn c_seminorm_single_term() {
        let shape = FieldShape::new(2, 1).unwrap();
        let b = absolute_value_net();
        let x = LaurentElement::monomial(2, mi(&[3]), rational(1, 1));
        let result = c_seminorm(&x, &b, &shape).unwrap();
        // exponent -B(-3) = -3
        assert_eq!(result.value, QExp::from_exponent(-3));
        assert!(result.compactoid);
    }

    #[test]
    fn c_seminorm_flags_non_compactoid() {
        let shape = FieldShape::new(2, 1).unwrap();
        let b = NetSpec::constant(1, ExtInt::zero());
        let x = LaurentElement::monomial(2, mi(&[0]), rational(1, 1));
        let result = c_seminorm(&x, &b, &shape).unwrap();
        assert_eq!(result.value, QExp::from_exponent(0));
        assert!(!result.compactoid);

        let zero = LaurentElement::zero(1, 2);
        assert!(c_seminorm(&zero, &b, &shape).unwrap().value.is_zero_value());
    }

    #[test]
    fn polar_membership_on_the_unit_lattice() {
        let a = NetSpec::constant(1, ExtInt::zero());
        // p t^0 has valuation 1 >= 1 - A(0) = 1: member.
        let inside = LaurentElement::monomial(2, mi(&[0]), rational(2, 1));
        assert!(polar_membership(&inside, &a).unwrap().member);

        // t^0 has valuation 0 < 1: not a member, certificate pairs to a unit.
        let outside = LaurentElement::monomial(2, mi(&[0]), rational(1, 1));
        let result = polar_membership(&outside, &a).unwrap();
        assert!(!result.member);
        match result.certificate {
            PolarCertificate::Violation {
                witness,
                pairing,
                pairing_valuation,
            } => {
                assert!(witness.in_net(&a).unwrap());
                assert_eq!(pairing, rational(1, 1));
                assert!(pairing_valuation <= ExtInt::zero());
            }
            other => panic!("expected violation, got {other:?}"),
        }

        let zero = LaurentElement::zero(1, 2);
        assert!(polar_membership(&zero, &a).unwrap().member);
    }
}
