//! Property suites for nets: the pseudo-polar involution, the duality of
//! classifications, classifier/window-oracle consistency, and min-plus
//! convolution of bounded nets.

mod common;

use proptest::prelude::*;

use common::seeded_net;
use hlf::gen::{self, NetProfile, Rng};
use hlf::{
    classify, classify_compactoid, classify_open_lattice, min_plus_convolve, nets_equal_on_window,
    window_corroborate, Corroboration, ExtInt, FieldShape, MultiIndex, NetKind, Window,
};

fn shapes() -> Vec<FieldShape> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        for r in 0..=d {
            out.push(FieldShape::new(d + 1, r).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pseudo_polar_is_an_involution(seed: u64, dim in 1usize..=3) {
        let net = seeded_net(seed, dim, NetProfile::full());
        let twice = net.pseudo_polar().pseudo_polar();
        // structural round trip and pointwise equality on the window
        prop_assert_eq!(&twice, &net);
        let window = Window::radius(dim, 25);
        prop_assert_eq!(nets_equal_on_window(&net, &twice, &window).unwrap(), None);
    }

    #[test]
    fn polar_matches_pointwise_formula(seed: u64, dim in 1usize..=3) {
        let net = seeded_net(seed, dim, NetProfile::full());
        let polar = net.pseudo_polar();
        for point in Window::radius(dim, 8).iter() {
            let alpha = MultiIndex::from_i64(&point);
            let direct = polar.eval(&alpha).unwrap();
            let formula = net.eval(&alpha.negated()).unwrap().one_minus();
            prop_assert_eq!(direct, formula);
        }
    }

    #[test]
    fn classification_duality_both_ways(seed: u64, which in 0usize..9) {
        let shape = shapes()[which];
        let lattice_side = seeded_net(seed, shape.dim(), NetProfile::lattice_side());
        let forward = classify_open_lattice(&lattice_side, &shape).unwrap().holds;
        let dual = classify_compactoid(&lattice_side.pseudo_polar(), &shape).unwrap().holds;
        prop_assert_eq!(forward, dual);

        let bounded_side = seeded_net(seed ^ 0xabcd, shape.dim(), NetProfile::bounded_side());
        let forward = classify_compactoid(&bounded_side, &shape).unwrap().holds;
        let dual = classify_open_lattice(&bounded_side.pseudo_polar(), &shape).unwrap().holds;
        prop_assert_eq!(forward, dual);
    }

    #[test]
    fn symbolic_true_never_contradicted_by_window(seed: u64, which in 0usize..9) {
        let shape = shapes()[which];
        for kind in [NetKind::OpenLattice, NetKind::Bounded, NetKind::Compactoid] {
            let profile = match kind {
                NetKind::OpenLattice => NetProfile::lattice_side(),
                _ => NetProfile::bounded_side(),
            };
            // half raw nets, half repaired so both verdicts are exercised
            let raw = seeded_net(seed, shape.dim(), profile);
            let repaired = gen::gen_classified_net(
                &mut Rng::new(seed).substream("prop-repaired"),
                &shape,
                kind,
            );
            for net in [&raw, &repaired] {
                let verdict = classify(net, &shape, kind).unwrap();
                let result = window_corroborate(net, &shape, kind, 10).unwrap();
                if verdict.holds {
                    prop_assert!(
                        !result.is_counterexample(),
                        "window refuted a true verdict: {result}"
                    );
                }
            }
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn minplus_of_bounded_nets_looks_bounded(seed: u64, which in 0usize..6) {
        // keep d <= 2 so the brute-force oracle stays cheap
        let all = shapes();
        let small: Vec<_> = all.iter().filter(|s| s.dim() <= 2).collect();
        let shape = small[which % small.len()];
        let mut rng = Rng::new(seed).substream("prop-minplus");
        let b1 = gen::gen_classified_net(&mut rng, shape, NetKind::Bounded);
        let b2 = gen::gen_classified_net(&mut rng, shape, NetKind::Bounded);
        let window = Window::radius(shape.dim(), 3);
        let table = min_plus_convolve(&b1, &b2, &window).unwrap();

        // brute-force oracle: enumerate decompositions over a box wide
        // enough to contain every minimizing corner of the generated class
        // (endpoints within ±5, window within ±3)
        let reach = 25i64;
        for (point, value) in table.iter() {
            prop_assert_ne!(value, &ExtInt::NegInf);
            let mut best = ExtInt::PosInf;
            for beta in Window::new(vec![-reach; shape.dim()], vec![reach; shape.dim()]).iter() {
                let gamma: Vec<i64> =
                    point.iter().zip(&beta).map(|(a, b)| a - b).collect();
                let v1 = b1.eval(&MultiIndex::from_i64(&beta)).unwrap();
                let v2 = b2.eval(&MultiIndex::from_i64(&gamma)).unwrap();
                if let Ok(sum) = v1.checked_add(&v2) {
                    if sum < best {
                        best = sum;
                    }
                }
            }
            prop_assert_eq!(value, &best, "at {:?}", point);
        }
    }
}

/// Independent classifier oracle for d = 1: sort the pieces along the axis
/// and decide from the two unbounded end pieces alone. Middle pieces live on
/// finite intervals and can never violate a condition.
mod line_oracle {
    use hlf::{ExtInt, FieldShape, NetSpec, ValueRule};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn affine_slope(rule: &ValueRule) -> Option<BigInt> {
        match rule {
            ValueRule::Affine { coeffs, .. } => Some(coeffs[0].clone()),
            ValueRule::Const(_) => None,
        }
    }

    fn end_pieces(net: &NetSpec) -> (&ValueRule, &ValueRule) {
        let first = net
            .pieces()
            .iter()
            .find(|(region, _)| region.interval(1).lo.is_none())
            .map(|(_, rule)| rule)
            .expect("a tiling of Z has a piece reaching -inf");
        let last = net
            .pieces()
            .iter()
            .find(|(region, _)| region.interval(1).hi.is_none())
            .map(|(_, rule)| rule)
            .expect("a tiling of Z has a piece reaching +inf");
        (first, last)
    }

    pub fn open_lattice(net: &NetSpec, shape: &FieldShape) -> bool {
        let (first, last) = end_pieces(net);
        if shape.r() == 0 {
            matches!(last, ValueRule::Const(ExtInt::NegInf))
        } else {
            let last_ok = match last {
                ValueRule::Const(ExtInt::NegInf) => true,
                ValueRule::Const(_) => false,
                rule => affine_slope(rule).unwrap() < BigInt::zero(),
            };
            let first_ok = match first {
                ValueRule::Const(_) => true,
                rule => affine_slope(rule).unwrap() >= BigInt::zero(),
            };
            last_ok && first_ok
        }
    }

    pub fn bounded(net: &NetSpec, shape: &FieldShape) -> bool {
        let (first, last) = end_pieces(net);
        if shape.r() == 0 {
            matches!(first, ValueRule::Const(ExtInt::PosInf))
        } else {
            let first_ok = match first {
                ValueRule::Const(_) => true,
                rule => affine_slope(rule).unwrap() <= BigInt::zero(),
            };
            let last_ok = match last {
                ValueRule::Const(_) => true,
                rule => affine_slope(rule).unwrap() >= BigInt::zero(),
            };
            first_ok && last_ok
        }
    }

    pub fn compactoid(net: &NetSpec, shape: &FieldShape) -> bool {
        if !bounded(net, shape) {
            return false;
        }
        if shape.r() == 0 {
            return true;
        }
        let (first, _) = end_pieces(net);
        match first {
            ValueRule::Const(ExtInt::PosInf) => true,
            ValueRule::Const(_) => false,
            rule => affine_slope(rule).unwrap() < BigInt::zero(),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn line_classifiers_match_the_end_piece_oracle(seed: u64, r in 0usize..=1) {
        let shape = FieldShape::new(2, r).unwrap();
        let lattice_side = seeded_net(seed, 1, NetProfile::lattice_side());
        prop_assert_eq!(
            classify_open_lattice(&lattice_side, &shape).unwrap().holds,
            line_oracle::open_lattice(&lattice_side, &shape),
            "open lattice disagreed on {:?}", lattice_side
        );
        let bounded_side = seeded_net(seed ^ 0x5a5a, 1, NetProfile::bounded_side());
        prop_assert_eq!(
            hlf::classify_bounded(&bounded_side, &shape).unwrap().holds,
            line_oracle::bounded(&bounded_side, &shape),
            "bounded disagreed on {:?}", bounded_side
        );
        prop_assert_eq!(
            classify_compactoid(&bounded_side, &shape).unwrap().holds,
            line_oracle::compactoid(&bounded_side, &shape),
            "compactoid disagreed on {:?}", bounded_side
        );
    }
}

#[test]
fn window_insufficiency_is_reported_for_limit_clauses() {
    // the constant net fails only the decay clause, which no window decides
    let net = hlf::NetSpec::constant(1, ExtInt::zero());
    let shape = FieldShape::new(2, 1).unwrap();
    let result = window_corroborate(&net, &shape, NetKind::OpenLattice, 10).unwrap();
    assert_eq!(
        result,
        Corroboration::Corroborated {
            window_decidable: false
        }
    );
}
