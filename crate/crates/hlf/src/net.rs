//! Finite presentations of nets Z^d -> Z ∪ {±inf}.
//!
//! A net assigns to every multi-index an extended integer: the exponent of
//! the fractional ideal allowed at that coefficient. Arbitrary nets are not
//! finitely describable, so this crate fixes a presentation class: finitely
//! many product boxes tiling Z^d, each carrying a constant or affine value
//! rule. The class is closed under the pseudo-polar transform and makes every
//! classification condition decidable by sign analysis of the affine
//! coefficients along unbounded box directions.
//!
//! Invariant: the pieces of a [`NetSpec`] tile Z^d exactly. There is no
//! first-match semantics; evaluation is therefore order-independent and net
//! equality is pointwise equality.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::region::{check_partition, PartitionDefect, Region};

/// The value rule of one piece: a constant (possibly ±inf) or an affine form
/// `coeffs · alpha + offset`. Affine rules take only finite values;
/// infinities enter exclusively through constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueRule {
    Const(ExtInt),
    Affine { coeffs: Vec<BigInt>, offset: BigInt },
}

impl ValueRule {
    pub fn constant<T: Into<ExtInt>>(v: T) -> Self {
        ValueRule::Const(v.into())
    }

    pub fn affine(coeffs: Vec<i64>, offset: i64) -> Self {
        ValueRule::Affine {
            coeffs: coeffs.into_iter().map(BigInt::from).collect(),
            offset: BigInt::from(offset),
        }
    }

    pub fn eval(&self, a: &MultiIndex) -> ExtInt {
        match self {
            ValueRule::Const(v) => v.clone(),
            ValueRule::Affine { coeffs, offset } => {
                let mut acc = offset.clone();
                for (c, x) in coeffs.iter().zip(a.coords()) {
                    acc += c * x;
                }
                ExtInt::Fin(acc)
            }
        }
    }
}

/// A piecewise-affine net on Z^d: an ordered list of (box, rule) pieces whose
/// boxes tile Z^d exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetSpec {
    dim: usize,
    pieces: Vec<(Region, ValueRule)>,
}

impl NetSpec {
    /// Builds a net without checking the tiling. Call
    /// [`NetSpec::validate_partition`] before relying on evaluation.
    pub fn new(dim: usize, pieces: Vec<(Region, ValueRule)>) -> Self {
        assert!(dim >= 1);
        NetSpec { dim, pieces }
    }

    /// The net that is constantly `v`.
    pub fn constant(dim: usize, v: ExtInt) -> Self {
        NetSpec::new(dim, vec![(Region::all(dim), ValueRule::Const(v))])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[(Region, ValueRule)] {
        &self.pieces
    }

    /// Confirms the boxes tile Z^d; defects carry a witness point in a gap or
    /// overlap. An empty return means the tiling is exact.
    pub fn validate_partition(&self) -> Vec<PartitionDefect> {
        let mut defects = Vec::new();
        for (i, (_, rule)) in self.pieces.iter().enumerate() {
            if let ValueRule::Affine { coeffs, .. } = rule {
                if coeffs.len() != self.dim {
                    defects.push(PartitionDefect::Malformed {
                        piece: i,
                        reason: format!(
                            "affine rule has {} coefficients, expected {}",
                            coeffs.len(),
                            self.dim
                        ),
                    });
                }
            }
        }
        if !defects.is_empty() {
            return defects;
        }
        let regions: Vec<Region> = self.pieces.iter().map(|(r, _)| r.clone()).collect();
        check_partition(&regions, self.dim)
    }

    pub fn is_valid_partition(&self) -> bool {
        self.validate_partition().is_empty()
    }

    /// Value at `a`. Requires a valid partition, under which the covering
    /// piece is unique.
    pub fn eval(&self, a: &MultiIndex) -> Result<ExtInt> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        for (region, rule) in &self.pieces {
            if region.contains(a) {
                return Ok(rule.eval(a));
            }
        }
        // Unreachable once validate_partition has passed.
        Err(Error::Format(format!(
            "no piece covers {a}; partition is invalid"
        )))
    }

    /// Returns the index of a piece whose rule is the given infinity, if any.
    pub(crate) fn find_value(&self, v: &ExtInt) -> Option<usize> {
        self.pieces
            .iter()
            .position(|(_, rule)| matches!(rule, ValueRule::Const(c) if c == v))
    }

    /// The negated reflection `alpha -> -self(-alpha)`.
    ///
    /// For a basic compactoid submodule B this is the net of the admissible
    /// seminorm computing the c-topology seminorm of functionals on B.
    pub fn negated_reflection(&self) -> NetSpec {
        let pieces = self
            .pieces
            .iter()
            .map(|(region, rule)| {
                let rule = match rule {
                    ValueRule::Const(v) => ValueRule::Const(v.clone().negated()),
                    ValueRule::Affine { coeffs, offset } => ValueRule::Affine {
                        coeffs: coeffs.clone(),
                        offset: -offset,
                    },
                };
                (region.negated(), rule)
            })
            .collect();
        NetSpec {
            dim: self.dim,
            pieces,
        }
    }

    /// The pseudo-polar net `alpha -> 1 - self(-alpha)`.
    ///
    /// Regions reflect through the origin; a constant v becomes 1 - v with
    /// 1 - (-inf) = +inf and 1 - (+inf) = -inf; an affine rule keeps its
    /// coefficients (reflection and argument negation cancel) and the offset
    /// becomes 1 - offset. Applying the transform twice restores the original
    /// net pointwise and piecewise.
    pub fn pseudo_polar(&self) -> NetSpec {
        let pieces = self
            .pieces
            .iter()
            .map(|(region, rule)| {
                let rule = match rule {
                    ValueRule::Const(v) => ValueRule::Const(v.one_minus()),
                    ValueRule::Affine { coeffs, offset } => ValueRule::Affine {
                        coeffs: coeffs.clone(),
                        offset: BigInt::from(1) - offset,
                    },
                };
                (region.negated(), rule)
            })
            .collect();
        NetSpec {
            dim: self.dim,
            pieces,
        }
    }
}

/// Compares two nets pointwise on a window, returning the first index where
/// they differ. `None` means they agree everywhere on the window.
pub fn nets_equal_on_window(
    a: &NetSpec,
    b: &NetSpec,
    window: &crate::region::Window,
) -> Result<Option<MultiIndex>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if window.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: window.dim(),
        });
    }
    let ta = crate::compiled::WindowTable::build(a, window)?;
    let tb = crate::compiled::WindowTable::build(b, window)?;
    for idx in 0..window.len() {
        if !ta.eq_cell(idx, &tb, idx) {
            // materialize the point only for the report
            let point = window.iter().nth(idx).expect("index within the window");
            return Ok(Some(MultiIndex::from_i64(&point)));
        }
    }
    Ok(None)
}

/// The ambient field shape: total dimension n >= 2 and the number r of
/// mixed-characteristic parameters, so that the coefficient index set is
/// Z^(n-1) with coordinates 1..=r of {{.}} kind and r+1..=n-1 of ((.)) kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldShape {
    n: usize,
    r: usize,
}

impl FieldShape {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n < 2 || r > n - 1 {
            return Err(Error::InvalidShape { n, r });
        }
        Ok(FieldShape { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Index dimension d = n - 1.
    pub fn dim(&self) -> usize {
        self.n - 1
    }

    /// 1-based positions of the {{.}} coordinates.
    pub fn curly_coords(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.r
    }

    /// 1-based positions of the ((.)) coordinates.
    pub fn round_coords(&self) -> std::ops::RangeInclusive<usize> {
        (self.r + 1)..=(self.n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::Interval;

    fn mi(coords: &[i64]) -> MultiIndex {
        MultiIndex::from_i64(coords)
    }

    /// i < 0 -> +inf, i >= 0 -> -i  (the lattice of O[[t]]-type examples)
    fn half_line_net() -> NetSpec {
        NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(-1)]),
                    ValueRule::Const(ExtInt::PosInf),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::affine(vec![-1], 0),
                ),
            ],
        )
    }

    #[test]
    fn eval_picks_the_covering_piece() {
        let net = half_line_net();
        assert!(net.is_valid_partition());
        assert_eq!(net.eval(&mi(&[3])).unwrap(), ExtInt::fin(-3));
        assert_eq!(net.eval(&mi(&[-2])).unwrap(), ExtInt::PosInf);
    }

    #[test]
    fn affine_evaluation() {
        let net = NetSpec::new(2, vec![(Region::all(2), ValueRule::affine(vec![1, -2], 5))]);
        // 1*2 + (-2)*1 + 5 = 5
        assert_eq!(net.eval(&mi(&[2, 1])).unwrap(), ExtInt::fin(5));
    }

    #[test]
    fn constant_net_polar() {
        let net = NetSpec::constant(1, ExtInt::fin(0));
        let polar = net.pseudo_polar();
        assert_eq!(polar.eval(&mi(&[7])).unwrap(), ExtInt::fin(1));
    }

    #[test]
    fn polar_matches_pointwise_formula() {
        let net = half_line_net();
        let polar = net.pseudo_polar();
        for i in -20..=20 {
            let direct = polar.eval(&mi(&[i])).unwrap();
            let formula = net.eval(&mi(&[-i])).unwrap().one_minus();
            assert_eq!(direct, formula, "at {i}");
        }
    }

    #[test]
    fn negated_reflection_matches_pointwise_formula() {
        let net = half_line_net();
        let reflected = net.negated_reflection();
        for i in -20..=20 {
            let direct = reflected.eval(&mi(&[i])).unwrap();
            let formula = net.eval(&mi(&[-i])).unwrap().negated();
            assert_eq!(direct, formula, "at {i}");
        }
    }

    #[test]
    fn polar_is_an_involution() {
        let net = half_line_net();
        let twice = net.pseudo_polar().pseudo_polar();
        for i in -25..=25 {
            assert_eq!(twice.eval(&mi(&[i])).unwrap(), net.eval(&mi(&[i])).unwrap());
        }
        assert_eq!(twice, net);
    }

    #[test]
    fn gap_and_overlap_detection() {
        let gap = NetSpec::new(
            1,
            vec![(
                Region::new(vec![Interval::at_least(0)]),
                ValueRule::constant(ExtInt::zero()),
            )],
        );
        assert!(!gap.is_valid_partition());

        let overlap = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(0)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
            ],
        );
        assert!(!overlap.is_valid_partition());
    }
}
