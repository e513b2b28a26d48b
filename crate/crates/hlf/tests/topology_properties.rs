//! Seminorm properties: the gauge/supremum agreement, the ultrametric law,
//! homogeneity, the membership bridge, the boundedness bridge, and window
//! convergence of partial sums.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{arb_element, arb_prime};
use hlf::gen::{self, NetProfile, Rng};
use hlf::{
    add, bounded_sup_difference, convergence_check, gauge_eval, scalar_mul, seminorm_eval, val_p,
    ExtInt, FieldShape, LaurentElement, MultiIndex, NetKind, QExp, SeriesGenerator, Window,
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
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauge_agrees_with_the_supremum_formula(
        seed: u64,
        which in 0usize..9,
        (prime, exp) in (arb_prime(), -3i64..=4),
    ) {
        let shape = shapes()[which];
        let mut rng = Rng::new(seed).substream("prop-gauge");
        let net = gen::gen_classified_net(&mut rng, &shape, NetKind::OpenLattice);
        let x = gen::gen_element(&mut rng, shape.dim(), &prime);
        let direct = seminorm_eval(&net, &x).unwrap();
        let gauge = gauge_eval(&net, &x).unwrap();
        prop_assert_eq!(direct, gauge);
        // also on a scaled copy, to move the optimum around
        let c = gen::gen_coefficient(&mut rng, &prime, exp);
        let scaled = scalar_mul(&c, &x);
        prop_assert_eq!(
            seminorm_eval(&net, &scaled).unwrap(),
            gauge_eval(&net, &scaled).unwrap()
        );
    }

    #[test]
    fn ultrametric_law_with_equality_case(
        seed: u64,
        (x, y) in (1usize..=3, arb_prime()).prop_flat_map(|(d, p)| (
            arb_element(d, p.clone()),
            arb_element(d, p),
        ))
    ) {
        // any net without +inf values defines a seminorm; no repair needed
        let net = common::seeded_net(seed, x.dim(), NetProfile::lattice_side());
        let nx = seminorm_eval(&net, &x).unwrap();
        let ny = seminorm_eval(&net, &y).unwrap();
        let nsum = seminorm_eval(&net, &add(&x, &y).unwrap()).unwrap();
        let max = nx.clone().max(ny.clone());
        prop_assert!(nsum <= max);
        if nx != ny {
            prop_assert_eq!(nsum, max);
        }
    }

    #[test]
    fn seminorms_are_homogeneous(
        seed: u64,
        (x, exp) in (1usize..=3, arb_prime()).prop_flat_map(|(d, p)| (
            arb_element(d, p),
            -4i64..=4,
        ))
    ) {
        let net = common::seeded_net(seed, x.dim(), NetProfile::lattice_side());
        let mut rng = Rng::new(seed).substream("prop-homog");
        let c = gen::gen_coefficient(&mut rng, x.prime(), exp);
        let scaled = scalar_mul(&c, &x);
        let base = seminorm_eval(&net, &x).unwrap();
        let shifted = seminorm_eval(&net, &scaled).unwrap();
        let v = val_p(&c, x.prime());
        let delta = -v.as_fin().unwrap();
        prop_assert_eq!(shifted, base.shifted(&delta));
    }

    #[test]
    fn membership_is_the_unit_ball_of_the_seminorm(
        seed: u64,
        x in (1usize..=3, arb_prime()).prop_flat_map(|(d, p)| arb_element(d, p))
    ) {
        let net = common::seeded_net(seed, x.dim(), NetProfile::lattice_side());
        let member = x.in_net(&net).unwrap();
        let exponent_at_most_zero =
            seminorm_eval(&net, &x).unwrap() <= QExp::from_exponent(0);
        prop_assert_eq!(member, exponent_at_most_zero);
    }

    #[test]
    fn bounded_sets_are_seminorm_bounded(seed: u64, which in 0usize..9) {
        let shape = shapes()[which];
        let prime = BigInt::from(5);
        let mut rng = Rng::new(seed).substream("prop-bridge");
        let n_net = gen::gen_classified_net(&mut rng, &shape, NetKind::OpenLattice);
        let k_net = gen::gen_classified_net(&mut rng, &shape, NetKind::Bounded);
        let result = bounded_sup_difference(&n_net, &k_net).unwrap();
        prop_assert_ne!(&result.sup, &ExtInt::PosInf, "difference must be bounded above");

        // every member of the bounded submodule obeys the bound
        let sample_window = Window::radius(shape.dim(), 6);
        for _ in 0..5 {
            let x = gen::gen_element_in_net(&mut rng, &k_net, &prime, &sample_window);
            let value = seminorm_eval(&n_net, &x).unwrap();
            prop_assert!(value.exponent() <= &result.sup);
        }

        // the supremum is attained by a monomial witness
        if let (ExtInt::Fin(sup), Some(at)) = (&result.sup, &result.attained_at) {
            let k_val = k_net.eval(at).unwrap();
            if let ExtInt::Fin(k_val) = k_val {
                let e = i64::try_from(&k_val).unwrap();
                let witness = LaurentElement::monomial(
                    prime.clone(),
                    at.clone(),
                    power(&prime, e),
                );
                prop_assert!(witness.in_net(&k_net).unwrap());
                let attained = seminorm_eval(&n_net, &witness).unwrap();
                prop_assert_eq!(attained.exponent(), &ExtInt::Fin(sup.clone()));
            }
        }
    }

    #[test]
    fn window_tails_vanish_and_never_grow(seed: u64, which in 0usize..9) {
        let shape = shapes()[which];
        if shape.dim() > 2 {
            return Ok(());
        }
        let prime = BigInt::from(2);
        let mut rng = Rng::new(seed).substream("prop-converge");
        let net = gen::gen_classified_net(&mut rng, &shape, NetKind::OpenLattice);
        let element = gen::gen_element(&mut rng, shape.dim(), &prime);
        let g = SeriesGenerator::table(
            shape.dim(),
            prime,
            element.terms().map(|(i, c)| (i.clone(), c.clone())),
        );
        let window = Window::radius(shape.dim(), 7);
        let schedule = gen::gen_schedule(&mut rng, shape.dim(), &window);
        let norms = convergence_check(&g, &net, &schedule, &window).unwrap();
        for pair in norms.windows(2) {
            prop_assert!(pair[1] <= pair[0], "tail norms must not increase");
        }
        prop_assert!(norms.last().unwrap().is_zero_value());
    }
}

fn power(p: &BigInt, e: i64) -> num_rational::BigRational {
    let pow = p.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        num_rational::BigRational::from_integer(pow)
    } else {
        num_rational::BigRational::new(BigInt::from(1), pow)
    }
}

#[test]
fn zero_schedule_edge() {
    let g = SeriesGenerator::table(
        1,
        2,
        [(MultiIndex::from_i64(&[0]), hlf::element::rational(1, 1))],
    );
    let net = hlf::NetSpec::constant(1, ExtInt::zero());
    let w = Window::radius(1, 2);
    let norms = convergence_check(&g, &net, &[MultiIndex::from_i64(&[2])], &w).unwrap();
    assert!(norms[0].is_zero_value());
}
