//! Symbolic classification of nets: which nets present open lattices, basic
//! bounded submodules, and basic compactoid submodules.
//!
//! For a shape (n, r) with index dimension d = n-1, the conditions are, per
//! 1-based coordinate l and per fixed tail (i_{l+1}, ..., i_d):
//!
//! * open lattice (values in Z ∪ {-inf}): (i) for ((.)) coordinates l in
//!   r+1..=d, the net is -inf on the whole slice {alpha_l = k, tail fixed}
//!   for every k beyond some k0(tail); (ii) for {{.}} coordinates l in
//!   1..=r, the net is bounded above on the slice {tail fixed} and the
//!   slice suprema tend to -inf as alpha_l -> +inf.
//! * basic bounded (values in Z ∪ {+inf}): (i) for ((.)) coordinates, the
//!   net is +inf on {alpha_l = j, tail fixed} for every j below some
//!   j0(tail); (ii) for {{.}} coordinates: bounded below per tail.
//! * basic compactoid: bounded, and additionally for {{.}} coordinates the
//!   slice infima tend to +inf as alpha_l -> -inf.
//!
//! On the piecewise-affine-on-boxes class every condition reduces to sign
//! analysis of affine coefficients along unbounded box directions, and a
//! violation in some piece violates the condition for *every* tail met by
//! that piece; witnesses therefore report one concrete tail plus a ray along
//! which the violation manifests. True verdicts carry certificates
//! (thresholds, per-piece bounds, monotonicity onsets) that window
//! corroboration checks against brute-force evaluation.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{FieldShape, NetSpec, ValueRule};
use crate::region::Region;

/// The three net classifications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetKind {
    OpenLattice,
    Bounded,
    Compactoid,
}

impl std::fmt::Display for NetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NetKind::OpenLattice => write!(f, "open-lattice"),
            NetKind::Bounded => write!(f, "bounded"),
            NetKind::Compactoid => write!(f, "compactoid"),
        }
    }
}

/// Which clause a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionId {
    /// Open lattice (i): value must become -inf far out along a ((.)) axis.
    LatticeVanishing,
    /// Open lattice (ii), bound clause: per-tail supremum must be finite.
    LatticeBoundedAbove,
    /// Open lattice (ii), limit clause: slice suprema must tend to -inf.
    LatticeDecay,
    /// Bounded (i): value must become +inf far down along a ((.)) axis.
    BoundedFull,
    /// Bounded (ii): per-tail infimum must be finite.
    BoundedBelow,
    /// Compactoid extra clause: slice infima must tend to +inf.
    CompactoidGrowth,
}

impl ConditionId {
    /// Whether a violation shows up as plain value persistence along a ray,
    /// checkable inside a finite window. Bound and limit clauses are not
    /// window-decidable: any finite pattern extends to a compliant net.
    pub fn window_replayable(&self) -> bool {
        matches!(
            self,
            ConditionId::LatticeVanishing | ConditionId::BoundedFull
        )
    }
}

impl std::fmt::Display for ConditionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConditionId::LatticeVanishing => "lattice(i): eventually -inf along ((.)) axis",
            ConditionId::LatticeBoundedAbove => "lattice(ii): bounded above per tail",
            ConditionId::LatticeDecay => "lattice(ii): slice suprema tend to -inf",
            ConditionId::BoundedFull => "bounded(i): eventually +inf along ((.)) axis",
            ConditionId::BoundedBelow => "bounded(ii): bounded below per tail",
            ConditionId::CompactoidGrowth => "compactoid: slice infima tend to +inf",
        };
        write!(f, "{s}")
    }
}

/// A machine-checkable violation: condition, 1-based coordinate, offending
/// piece, one concrete tail, and a ray (base point plus unit direction)
/// staying inside the piece along which the violation manifests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: ConditionId,
    pub coordinate: usize,
    pub piece: usize,
    pub tail: Vec<BigInt>,
    pub ray_base: MultiIndex,
    pub ray_direction: Vec<i64>,
    pub detail: String,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} violated at coordinate {} by piece {} (tail {:?}, ray from {} along {:?}): {}",
            self.condition,
            self.coordinate,
            self.piece,
            self.tail.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            self.ray_base,
            self.ray_direction,
            self.detail
        )
    }
}

/// Claim: beyond `from` along coordinate `coordinate`, every value is the
/// stated infinity (-inf upward for lattices, +inf downward for bounded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub coordinate: usize,
    pub from: BigInt,
    pub upward: bool,
}

/// Claim: within piece `piece`, the affine contribution of the head
/// coordinates 1..=l is bounded by `bound` (an upper bound for lattices, a
/// lower bound for bounded nets). For constant rules `bound` is the value
/// itself and already includes everything; for affine rules the corroborator
/// adds the tail contribution and offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceBound {
    pub coordinate: usize,
    pub piece: usize,
    pub bound: ExtInt,
}

/// Claim: per fixed tail, slice extrema are strictly monotone beyond `from`
/// along `coordinate` (suprema strictly decreasing upward for lattices,
/// infima strictly increasing downward for compactoids), infinities excepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monotone {
    pub coordinate: usize,
    pub from: BigInt,
    pub upward: bool,
}

/// Evidence attached to a true verdict, consumed by window corroboration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: NetKind,
    pub thresholds: Vec<Threshold>,
    pub piece_bounds: Vec<PieceBound>,
    pub monotone: Vec<Monotone>,
}

/// Outcome of a classification: a boolean verdict with either a witness
/// (false) or a certificate (true).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    fn failure(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            certificate: None,
        }
    }

    fn success(certificate: Certificate) -> Self {
        Verdict {
            holds: true,
            witness: None,
            certificate: Some(certificate),
        }
    }
}

fn check_dims(net: &NetSpec, shape: &FieldShape) -> Result<()> {
    if net.dim() != shape.dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.dim(),
            found: net.dim(),
        });
    }
    Ok(())
}

/// A concrete point of a non-empty box: finite lower end if present, else
/// finite upper end, else 0, per coordinate.
fn representative(region: &Region) -> MultiIndex {
    MultiIndex::new(
        region
            .intervals
            .iter()
            .map(|iv| match (&iv.lo, &iv.hi) {
                (Some(lo), _) => lo.clone(),
                (None, Some(hi)) => hi.clone(),
                (None, None) => BigInt::from(0),
            })
            .collect(),
    )
}

fn tail_of(region: &Region, l: usize) -> Vec<BigInt> {
    representative(region).coords()[l..].to_vec()
}

fn unit_ray(dim: usize, l: usize, sign: i64) -> Vec<i64> {
    let mut dir = vec![0i64; dim];
    dir[l - 1] = sign;
    dir
}

/// Supremum of the head part `sum_{m <= l} c_m alpha_m` over the box.
fn head_sup(coeffs: &[BigInt], region: &Region, l: usize) -> ExtInt {
    let mut acc = BigInt::from(0);
    for m in 1..=l {
        let c = &coeffs[m - 1];
        let iv = region.interval(m);
        if c.sign() == num_bigint::Sign::Plus {
            match &iv.hi {
                Some(hi) => acc += c * hi,
                None => return ExtInt::PosInf,
            }
        } else if c.sign() == num_bigint::Sign::Minus {
            match &iv.lo {
                Some(lo) => acc += c * lo,
                None => return ExtInt::PosInf,
            }
        }
    }
    ExtInt::Fin(acc)
}

/// Infimum of the head part over the box; mirror of [`head_sup`].
fn head_inf(coeffs: &[BigInt], region: &Region, l: usize) -> ExtInt {
    let mut acc = BigInt::from(0);
    for m in 1..=l {
        let c = &coeffs[m - 1];
        let iv = region.interval(m);
        if c.sign() == num_bigint::Sign::Plus {
            match &iv.lo {
                Some(lo) => acc += c * lo,
                None => return ExtInt::NegInf,
            }
        } else if c.sign() == num_bigint::Sign::Minus {
            match &iv.hi {
                Some(hi) => acc += c * hi,
                None => return ExtInt::NegInf,
            }
        }
    }
    ExtInt::Fin(acc)
}

/// Largest magnitude of a finite endpoint in coordinate `l`, plus one; the
/// onset beyond which piece coverage along `l` is translation-stable.
fn monotone_onset(net: &NetSpec, l: usize) -> BigInt {
    let mut t = BigInt::from(0);
    for (region, _) in net.pieces() {
        let iv = region.interval(l);
        for b in [&iv.lo, &iv.hi].into_iter().flatten() {
            let m = if b.sign() == num_bigint::Sign::Minus {
                -b
            } else {
                b.clone()
            };
            if m > t {
                t = m;
            }
        }
    }
    t + BigInt::one()
}

/// Classifies a net as presenting an open lattice of the field of shape
/// `shape`. Values must lie in Z ∪ {-inf}; a +inf value is an error.
/// Requires a valid partition.
pub fn classify_open_lattice(net: &NetSpec, shape: &FieldShape) -> Result<Verdict> {
    check_dims(net, shape)?;
    if let Some(piece) = net.find_value(&ExtInt::PosInf) {
        return Err(Error::InvalidNetValues {
            piece,
            found: "+inf",
        });
    }

    // (i) along ((.)) coordinates: every piece not constantly -inf must have
    // a bounded-above interval, otherwise non-vanishing values persist for
    // arbitrarily large alpha_l on every tail the piece meets.
    for l in shape.round_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            let is_neg_inf = matches!(rule, ValueRule::Const(ExtInt::NegInf));
            if !is_neg_inf && region.interval(l).hi.is_none() {
                return Ok(Verdict::failure(Witness {
                    condition: ConditionId::LatticeVanishing,
                    coordinate: l,
                    piece: idx,
                    tail: tail_of(region, l),
                    ray_base: representative(region),
                    ray_direction: unit_ray(net.dim(), l, 1),
                    detail: "values other than -inf persist for arbitrarily large scan index"
                        .into(),
                }));
            }
        }
    }

    // (ii) bound clause along {{.}} coordinates: an affine rule unbounded
    // above in a head direction makes every tail slice unbounded.
    for l in shape.curly_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            if let ValueRule::Affine { coeffs, .. } = rule {
                let c = &coeffs[l - 1];
                let iv = region.interval(l);
                let escape = if c.sign() == num_bigint::Sign::Plus && iv.hi.is_none() {
                    Some(1)
                } else if c.sign() == num_bigint::Sign::Minus && iv.lo.is_none() {
                    Some(-1)
                } else {
                    None
                };
                if let Some(sign) = escape {
                    return Ok(Verdict::failure(Witness {
                        condition: ConditionId::LatticeBoundedAbove,
                        coordinate: l,
                        piece: idx,
                        tail: tail_of(region, l),
                        ray_base: representative(region),
                        ray_direction: unit_ray(net.dim(), l, sign),
                        detail: "affine values grow without bound inside the tail slice".into(),
                    }));
                }
            }
        }
    }

    // (ii) limit clause: a piece stretching to alpha_l = +inf must either be
    // constantly -inf or decay strictly along l.
    for l in shape.curly_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            if region.interval(l).hi.is_some() {
                continue;
            }
            let decays = match rule {
                ValueRule::Const(ExtInt::NegInf) => true,
                ValueRule::Const(_) => false,
                ValueRule::Affine { coeffs, .. } => coeffs[l - 1].sign() == num_bigint::Sign::Minus,
            };
            if !decays {
                return Ok(Verdict::failure(Witness {
                    condition: ConditionId::LatticeDecay,
                    coordinate: l,
                    piece: idx,
                    tail: tail_of(region, l),
                    ray_base: representative(region),
                    ray_direction: unit_ray(net.dim(), l, 1),
                    detail: "slice suprema do not tend to -inf as the scan index grows".into(),
                }));
            }
        }
    }

    Ok(Verdict::success(lattice_certificate(net, shape)))
}

fn lattice_certificate(net: &NetSpec, shape: &FieldShape) -> Certificate {
    let mut thresholds = Vec::new();
    for l in shape.round_coords() {
        let mut from = BigInt::from(0);
        for (region, rule) in net.pieces() {
            if matches!(rule, ValueRule::Const(ExtInt::NegInf)) {
                continue;
            }
            let hi = region.interval(l).hi.as_ref().expect("checked finite");
            if hi + BigInt::one() > from {
                from = hi + BigInt::one();
            }
        }
        thresholds.push(Threshold {
            coordinate: l,
            from,
            upward: true,
        });
    }
    let mut piece_bounds = Vec::new();
    let mut monotone = Vec::new();
    for l in shape.curly_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            let bound = match rule {
                ValueRule::Const(v) => v.clone(),
                ValueRule::Affine { coeffs, .. } => head_sup(coeffs, region, l),
            };
            piece_bounds.push(PieceBound {
                coordinate: l,
                piece: idx,
                bound,
            });
        }
        monotone.push(Monotone {
            coordinate: l,
            from: monotone_onset(net, l),
            upward: true,
        });
    }
    Certificate {
        kind: NetKind::OpenLattice,
        thresholds,
        piece_bounds,
        monotone,
    }
}

/// Classifies a net as presenting a basic bounded submodule. Values must lie
/// in Z ∪ {+inf}; a -inf value is an error. Requires a valid partition.
pub fn classify_bounded(net: &NetSpec, shape: &FieldShape) -> Result<Verdict> {
    check_dims(net, shape)?;
    if let Some(piece) = net.find_value(&ExtInt::NegInf) {
        return Err(Error::InvalidNetValues {
            piece,
            found: "-inf",
        });
    }
    if let Some(witness) = bounded_violation(net, shape) {
        return Ok(Verdict::failure(witness));
    }
    Ok(Verdict::success(bounded_certificate(
        net,
        shape,
        NetKind::Bounded,
    )))
}

fn bounded_violation(net: &NetSpec, shape: &FieldShape) -> Option<Witness> {
    // (i) along ((.)) coordinates: pieces not constantly +inf must be
    // bounded below along l.
    for l in shape.round_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            let is_pos_inf = matches!(rule, ValueRule::Const(ExtInt::PosInf));
            if !is_pos_inf && region.interval(l).lo.is_none() {
                return Some(Witness {
                    condition: ConditionId::BoundedFull,
                    coordinate: l,
                    piece: idx,
                    tail: tail_of(region, l),
                    ray_base: representative(region),
                    ray_direction: unit_ray(net.dim(), l, -1),
                    detail: "values other than +inf persist for arbitrarily low scan index".into(),
                });
            }
        }
    }
    // (ii) along {{.}} coordinates: affine rules must be bounded below on
    // head directions.
    for l in shape.curly_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            if let ValueRule::Affine { coeffs, .. } = rule {
                let c = &coeffs[l - 1];
                let iv = region.interval(l);
                let escape = if c.sign() == num_bigint::Sign::Plus && iv.lo.is_none() {
                    Some(-1)
                } else if c.sign() == num_bigint::Sign::Minus && iv.hi.is_none() {
                    Some(1)
                } else {
                    None
                };
                if let Some(sign) = escape {
                    return Some(Witness {
                        condition: ConditionId::BoundedBelow,
                        coordinate: l,
                        piece: idx,
                        tail: tail_of(region, l),
                        ray_base: representative(region),
                        ray_direction: unit_ray(net.dim(), l, sign),
                        detail: "affine values drop without bound inside the tail slice".into(),
                    });
                }
            }
        }
    }
    None
}

fn bounded_certificate(net: &NetSpec, shape: &FieldShape, kind: NetKind) -> Certificate {
    let mut thresholds = Vec::new();
    for l in shape.round_coords() {
        let mut from = BigInt::from(0);
        for (region, rule) in net.pieces() {
            if matches!(rule, ValueRule::Const(ExtInt::PosInf)) {
                continue;
            }
            let lo = region.interval(l).lo.as_ref().expect("checked finite");
            if lo - BigInt::one() < from {
                from = lo - BigInt::one();
            }
        }
        thresholds.push(Threshold {
            coordinate: l,
            from,
            upward: false,
        });
    }
    let mut piece_bounds = Vec::new();
    let mut monotone = Vec::new();
    for l in shape.curly_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            let bound = match rule {
                ValueRule::Const(v) => v.clone(),
                ValueRule::Affine { coeffs, .. } => head_inf(coeffs, region, l),
            };
            piece_bounds.push(PieceBound {
                coordinate: l,
                piece: idx,
                bound,
            });
        }
        if kind == NetKind::Compactoid {
            monotone.push(Monotone {
                coordinate: l,
                from: -monotone_onset(net, l),
                upward: false,
            });
        }
    }
    Certificate {
        kind,
        thresholds,
        piece_bounds,
        monotone,
    }
}

/// Classifies a net as presenting a basic compactoid submodule: the bounded
/// conditions plus divergence of slice infima along every {{.}} coordinate.
pub fn classify_compactoid(net: &NetSpec, shape: &FieldShape) -> Result<Verdict> {
    check_dims(net, shape)?;
    if let Some(piece) = net.find_value(&ExtInt::NegInf) {
        return Err(Error::InvalidNetValues {
            piece,
            found: "-inf",
        });
    }
    if let Some(witness) = bounded_violation(net, shape) {
        return Ok(Verdict::failure(witness));
    }
    for l in shape.curly_coords() {
        for (idx, (region, rule)) in net.pieces().iter().enumerate() {
            if region.interval(l).lo.is_some() {
                continue;
            }
            let grows = match rule {
                ValueRule::Const(ExtInt::PosInf) => true,
                ValueRule::Const(_) => false,
                ValueRule::Affine { coeffs, .. } => coeffs[l - 1].sign() == num_bigint::Sign::Minus,
            };
            if !grows {
                return Ok(Verdict::failure(Witness {
                    condition: ConditionId::CompactoidGrowth,
                    coordinate: l,
                    piece: idx,
                    tail: tail_of(region, l),
                    ray_base: representative(region),
                    ray_direction: unit_ray(net.dim(), l, -1),
                    detail: "slice infima do not tend to +inf as the scan index drops".into(),
                }));
            }
        }
    }
    Ok(Verdict::success(bounded_certificate(
        net,
        shape,
        NetKind::Compactoid,
    )))
}

/// Dispatch by kind.
pub fn classify(net: &NetSpec, shape: &FieldShape, kind: NetKind) -> Result<Verdict> {
    match kind {
        NetKind::OpenLattice => classify_open_lattice(net, shape),
        NetKind::Bounded => classify_bounded(net, shape),
        NetKind::Compactoid => classify_compactoid(net, shape),
    }
}
