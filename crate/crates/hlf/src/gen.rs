//! Deterministic generators for randomized verification.
//!
//! All randomness flows from one 64-bit seed through splitmix64; substreams
//! are derived by hashing a label into the seed, so adding a suite never
//! perturbs the streams of the others and every failure is replayable from
//! (seed, label).
//!
//! Net generation cuts each coordinate at a few small breakpoints and takes
//! the full grid of product cells, which tiles Z^d by construction; rules
//! are small constants or affine forms. Naively random rules almost never
//! satisfy the limit clauses of the classifications, so targeted generators
//! repair the rules piece by piece (never the regions, so validity is
//! preserved) until the requested classification provably holds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::classify::{classify, NetKind};
use crate::element::LaurentElement;
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{FieldShape, NetSpec, ValueRule};
use crate::region::{Interval, Region, Window};

/// splitmix64 stream.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    /// Independent stream derived by hashing a label into the seed.
    pub fn substream(&self, label: &str) -> Rng {
        let mut h: u64 = 0xcbf29ce484222325; // FNV-1a
        for b in label.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        Rng(self.0 ^ h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Which infinities the generated constant rules may take.
#[derive(Clone, Copy, Debug)]
pub struct NetProfile {
    pub allow_neg_inf: bool,
    pub allow_pos_inf: bool,
}

impl NetProfile {
    /// Values in Z ∪ {-inf}: the lattice side.
    pub fn lattice_side() -> Self {
        NetProfile {
            allow_neg_inf: true,
            allow_pos_inf: false,
        }
    }

    /// Values in Z ∪ {+inf}: the bounded side.
    pub fn bounded_side() -> Self {
        NetProfile {
            allow_neg_inf: false,
            allow_pos_inf: true,
        }
    }

    /// Values in Z ∪ {±inf}.
    pub fn full() -> Self {
        NetProfile {
            allow_neg_inf: true,
            allow_pos_inf: true,
        }
    }
}

fn gen_rule(rng: &mut Rng, dim: usize, profile: NetProfile) -> ValueRule {
    let mut infinities = Vec::new();
    if profile.allow_neg_inf {
        infinities.push(ExtInt::NegInf);
    }
    if profile.allow_pos_inf {
        infinities.push(ExtInt::PosInf);
    }
    if !infinities.is_empty() && rng.chance(1, 3) {
        let pick = rng.below(infinities.len() as u64) as usize;
        return ValueRule::Const(infinities[pick].clone());
    }
    if rng.chance(1, 2) {
        ValueRule::constant(ExtInt::fin(rng.range(-4, 4)))
    } else {
        let coeffs = (0..dim).map(|_| rng.range(-3, 3)).collect();
        ValueRule::affine(coeffs, rng.range(-4, 4))
    }
}

/// A random net on the full grid of cells cut by 0..=2 breakpoints per
/// coordinate. The cells tile Z^d by construction.
pub fn gen_net(rng: &mut Rng, dim: usize, profile: NetProfile) -> NetSpec {
    let mut coordinate_intervals: Vec<Vec<Interval>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut cuts: Vec<i64> = (0..rng.below(3)).map(|_| rng.range(-5, 5)).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let mut intervals = Vec::with_capacity(cuts.len() + 1);
        match cuts.first() {
            None => intervals.push(Interval::all()),
            Some(&first) => {
                intervals.push(Interval::at_most(first - 1));
                for pair in cuts.windows(2) {
                    intervals.push(Interval::bounded(pair[0], pair[1] - 1));
                }
                intervals.push(Interval::at_least(*cuts.last().unwrap()));
            }
        }
        coordinate_intervals.push(intervals);
    }

    let mut pieces = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let region = Region::new(
            (0..dim)
                .map(|m| coordinate_intervals[m][idx[m]].clone())
                .collect(),
        );
        let rule = gen_rule(rng, dim, profile);
        pieces.push((region, rule));

        let mut m = 0;
        loop {
            if m == dim {
                return NetSpec::new(dim, pieces);
            }
            idx[m] += 1;
            if idx[m] < coordinate_intervals[m].len() {
                break;
            }
            idx[m] = 0;
            m += 1;
        }
    }
}

/// Rule surgery turning an arbitrary lattice-side net into an open lattice:
/// pieces stretching out along a ((.)) axis become -inf, and along {{.}}
/// axes the affine coefficients are forced into the decaying, bounded-above
/// pattern. Regions never change, so partition validity is preserved.
pub fn repair_to_lattice(net: &NetSpec, shape: &FieldShape) -> NetSpec {
    let pieces = net
        .pieces()
        .iter()
        .map(|(region, rule)| {
            let unbounded_round = shape
                .round_coords()
                .any(|l| region.interval(l).hi.is_none());
            let rule = match rule {
                ValueRule::Const(ExtInt::NegInf) => ValueRule::Const(ExtInt::NegInf),
                ValueRule::Const(v) => {
                    let unbounded_curly = shape
                        .curly_coords()
                        .any(|l| region.interval(l).hi.is_none());
                    if unbounded_round || unbounded_curly {
                        ValueRule::Const(ExtInt::NegInf)
                    } else {
                        ValueRule::Const(v.clone())
                    }
                }
                ValueRule::Affine { coeffs, offset } => {
                    if unbounded_round {
                        ValueRule::Const(ExtInt::NegInf)
                    } else {
                        let mut coeffs = coeffs.clone();
                        let mut dead = false;
                        for m in shape.curly_coords() {
                            let iv = region.interval(m);
                            match (&iv.lo, &iv.hi) {
                                (None, None) => {
                                    dead = true;
                                    break;
                                }
                                (_, None) => {
                                    // decay upward, bounded since lo is finite
                                    let magnitude: BigInt = std::cmp::max(
                                        BigInt::one(),
                                        coeffs[m - 1].magnitude().clone().into(),
                                    );
                                    coeffs[m - 1] = -magnitude;
                                }
                                (None, _) if coeffs[m - 1].sign() == num_bigint::Sign::Minus => {
                                    coeffs[m - 1] = -&coeffs[m - 1];
                                }
                                _ => {}
                            }
                        }
                        if dead {
                            ValueRule::Const(ExtInt::NegInf)
                        } else {
                            ValueRule::Affine {
                                coeffs,
                                offset: offset.clone(),
                            }
                        }
                    }
                }
            };
            (region.clone(), rule)
        })
        .collect();
    NetSpec::new(net.dim(), pieces)
}

/// Mirror surgery for the bounded conditions.
pub fn repair_to_bounded(net: &NetSpec, shape: &FieldShape) -> NetSpec {
    let pieces = net
        .pieces()
        .iter()
        .map(|(region, rule)| {
            let unbounded_round = shape
                .round_coords()
                .any(|l| region.interval(l).lo.is_none());
            let rule = match rule {
                ValueRule::Const(ExtInt::PosInf) => ValueRule::Const(ExtInt::PosInf),
                ValueRule::Const(v) => {
                    if unbounded_round {
                        ValueRule::Const(ExtInt::PosInf)
                    } else {
                        ValueRule::Const(v.clone())
                    }
                }
                ValueRule::Affine { coeffs, offset } => {
                    if unbounded_round {
                        ValueRule::Const(ExtInt::PosInf)
                    } else {
                        let mut coeffs = coeffs.clone();
                        let mut constant = None;
                        for m in shape.curly_coords() {
                            let iv = region.interval(m);
                            match (&iv.lo, &iv.hi) {
                                (None, None) => {
                                    constant = Some(offset.clone());
                                    break;
                                }
                                (None, _) => {
                                    if coeffs[m - 1].sign() == num_bigint::Sign::Plus {
                                        coeffs[m - 1] = -&coeffs[m - 1];
                                    }
                                }
                                (_, None) if coeffs[m - 1].sign() == num_bigint::Sign::Minus => {
                                    coeffs[m - 1] = -&coeffs[m - 1];
                                }
                                _ => {}
                            }
                        }
                        match constant {
                            Some(v) => ValueRule::Const(ExtInt::Fin(v)),
                            None => ValueRule::Affine {
                                coeffs,
                                offset: offset.clone(),
                            },
                        }
                    }
                }
            };
            (region.clone(), rule)
        })
        .collect();
    NetSpec::new(net.dim(), pieces)
}

/// Bounded surgery plus divergence along every {{.}} axis pointing down.
pub fn repair_to_compactoid(net: &NetSpec, shape: &FieldShape) -> NetSpec {
    let bounded = repair_to_bounded(net, shape);
    let pieces = bounded
        .pieces()
        .iter()
        .map(|(region, rule)| {
            let mut rule = rule.clone();
            for m in shape.curly_coords() {
                let iv = region.interval(m);
                if iv.lo.is_some() {
                    continue;
                }
                rule = match rule {
                    ValueRule::Const(ExtInt::PosInf) => ValueRule::Const(ExtInt::PosInf),
                    ValueRule::Const(ExtInt::Fin(v)) => {
                        if iv.hi.is_none() {
                            ValueRule::Const(ExtInt::PosInf)
                        } else {
                            // grow as alpha_m drops; bounded below since hi is finite
                            let mut coeffs = vec![BigInt::from(0); net.dim()];
                            coeffs[m - 1] = BigInt::from(-1);
                            ValueRule::Affine { coeffs, offset: v }
                        }
                    }
                    ValueRule::Const(other) => ValueRule::Const(other),
                    ValueRule::Affine { mut coeffs, offset } => {
                        if iv.hi.is_none() {
                            ValueRule::Const(ExtInt::PosInf)
                        } else {
                            let magnitude: BigInt = std::cmp::max(
                                BigInt::one(),
                                coeffs[m - 1].magnitude().clone().into(),
                            );
                            coeffs[m - 1] = -magnitude;
                            ValueRule::Affine { coeffs, offset }
                        }
                    }
                };
            }
            (region.clone(), rule)
        })
        .collect();
    NetSpec::new(net.dim(), pieces)
}

/// A random net certified to carry the requested classification.
pub fn gen_classified_net(rng: &mut Rng, shape: &FieldShape, kind: NetKind) -> NetSpec {
    let (profile, repair): (_, fn(&NetSpec, &FieldShape) -> NetSpec) = match kind {
        NetKind::OpenLattice => (NetProfile::lattice_side(), repair_to_lattice),
        NetKind::Bounded => (NetProfile::bounded_side(), repair_to_bounded),
        NetKind::Compactoid => (NetProfile::bounded_side(), repair_to_compactoid),
    };
    let net = repair(&gen_net(rng, shape.dim(), profile), shape);
    debug_assert!(
        classify(&net, shape, kind)
            .map(|v| v.holds)
            .unwrap_or(false),
        "repair must certify the requested classification"
    );
    net
}

fn pow_big(p: &BigInt, e: i64) -> BigRational {
    let pow = p.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(pow)
    } else {
        BigRational::new(BigInt::one(), pow)
    }
}

/// A random coefficient p^e * m/n with m, n coprime to p.
pub fn gen_coefficient(rng: &mut Rng, prime: &BigInt, exponent: i64) -> BigRational {
    let unit = |rng: &mut Rng| loop {
        let candidate = BigInt::from(rng.range(1, 9));
        if num_integer::Integer::gcd(&candidate, prime) == BigInt::one() {
            return candidate;
        }
    };
    let sign = if rng.chance(1, 2) { 1 } else { -1 };
    let num = unit(rng) * BigInt::from(sign);
    let den = unit(rng);
    pow_big(prime, exponent) * BigRational::new(num, den)
}

/// A random finitely supported element with indices in [-6, 6]^d.
pub fn gen_element(rng: &mut Rng, dim: usize, prime: &BigInt) -> LaurentElement {
    let count = rng.below(6) + 1;
    let mut terms = Vec::new();
    for _ in 0..count {
        let index = MultiIndex::from_i64(&(0..dim).map(|_| rng.range(-6, 6)).collect::<Vec<_>>());
        let exponent = rng.range(-3, 4);
        let coeff = gen_coefficient(rng, prime, exponent);
        terms.push((index, coeff));
    }
    LaurentElement::from_terms(dim, prime.clone(), terms)
}

/// A random element guaranteed to lie in the submodule presented by `net`
/// (coefficient valuations at least the net value), supported inside the
/// window. Indices where the net is +inf admit only zero and are skipped.
pub fn gen_element_in_net(
    rng: &mut Rng,
    net: &NetSpec,
    prime: &BigInt,
    window: &Window,
) -> LaurentElement {
    let count = rng.below(5) + 1;
    let mut terms = Vec::new();
    for _ in 0..count {
        let point: Vec<i64> = (0..net.dim())
            .map(|m| rng.range(window.lo[m], window.hi[m]))
            .collect();
        let index = MultiIndex::from_i64(&point);
        let exponent = match net.eval(&index).expect("valid partition") {
            ExtInt::PosInf => continue,
            ExtInt::NegInf => rng.range(-4, 4),
            ExtInt::Fin(v) => {
                let base = i64::try_from(&v).expect("generated net values are small");
                base + rng.range(0, 2)
            }
        };
        terms.push((index, gen_coefficient(rng, prime, exponent)));
    }
    LaurentElement::from_terms(net.dim(), prime.clone(), terms)
}

/// A strictly increasing schedule inside the window, ending at the window's
/// top corner so that tails eventually empty out.
pub fn gen_schedule(rng: &mut Rng, dim: usize, window: &Window) -> Vec<MultiIndex> {
    let mut points: Vec<MultiIndex> = (0..rng.below(4) + 3)
        .map(|_| {
            MultiIndex::from_i64(
                &(0..dim)
                    .map(|m| rng.range(window.lo[m], window.hi[m]))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    points.push(MultiIndex::from_i64(&window.hi));
    points.sort();
    points.dedup();
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_bounded, classify_compactoid, classify_open_lattice};

    #[test]
    fn streams_are_deterministic_and_label_separated() {
        let mut a = Rng::new(7).substream("suite");
        let mut b = Rng::new(7).substream("suite");
        let mut c = Rng::new(7).substream("other");
        let xs: Vec<u64> = (0..5).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..5).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..5).map(|_| c.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn generated_nets_tile_exactly() {
        let mut rng = Rng::new(123).substream("tiles");
        for dim in 1..=3 {
            for _ in 0..25 {
                let net = gen_net(&mut rng, dim, NetProfile::full());
                assert!(net.is_valid_partition());
            }
        }
    }

    #[test]
    fn repairs_certify_their_classifications() {
        let mut rng = Rng::new(99).substream("repair");
        for n in 2..=4usize {
            for r in 0..=(n - 1) {
                let shape = FieldShape::new(n, r).unwrap();
                for _ in 0..40 {
                    let lattice = gen_classified_net(&mut rng, &shape, NetKind::OpenLattice);
                    assert!(classify_open_lattice(&lattice, &shape).unwrap().holds);
                    let bounded = gen_classified_net(&mut rng, &shape, NetKind::Bounded);
                    assert!(classify_bounded(&bounded, &shape).unwrap().holds);
                    let compactoid = gen_classified_net(&mut rng, &shape, NetKind::Compactoid);
                    assert!(classify_compactoid(&compactoid, &shape).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn in_net_elements_are_members() {
        let mut rng = Rng::new(5).substream("members");
        let prime = BigInt::from(3);
        let shape = FieldShape::new(3, 1).unwrap();
        let window = Window::radius(2, 6);
        for _ in 0..30 {
            let net = gen_classified_net(&mut rng, &shape, NetKind::Bounded);
            let x = gen_element_in_net(&mut rng, &net, &prime, &window);
            assert!(x.in_net(&net).unwrap());
        }
    }

    #[test]
    fn schedules_increase_strictly() {
        let mut rng = Rng::new(44).substream("schedule");
        let window = Window::radius(2, 5);
        for _ in 0..20 {
            let schedule = gen_schedule(&mut rng, 2, &window);
            for pair in schedule.windows(2) {
                assert!(pair[0] < pair[1]);
            }
            assert_eq!(schedule.last().unwrap(), &MultiIndex::from_i64(&window.hi));
        }
    }
}
