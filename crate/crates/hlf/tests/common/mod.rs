//! Shared strategies and seeded builders for the property suites.
//! Each test target uses its own subset, so the dead-code lint is off.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hlf::gen::{self, NetProfile, Rng};
use hlf::{FieldShape, LaurentElement, MultiIndex, NetSpec};

pub fn arb_prime() -> impl Strategy<Value = BigInt> {
    prop::sample::select(vec![2i64, 3, 5, 7]).prop_map(BigInt::from)
}

pub fn arb_dim() -> impl Strategy<Value = usize> {
    1usize..=3
}

/// (dim, r) pairs with 0 <= r <= dim.
pub fn arb_shape() -> impl Strategy<Value = FieldShape> {
    arb_dim()
        .prop_flat_map(|d| (Just(d), 0..=d))
        .prop_map(|(d, r)| FieldShape::new(d + 1, r).expect("valid shape"))
}

/// A coefficient p^exp * m/n with m, n coprime to p.
fn coefficient(prime: &BigInt, exp: i64, m: i64, n: i64, negative: bool) -> BigRational {
    let fix = |mut u: i64| {
        let p = i64::try_from(prime).expect("small test primes");
        while u % p == 0 {
            u += 1;
        }
        u
    };
    let sign = if negative { -1 } else { 1 };
    let unit = BigRational::new(BigInt::from(sign * fix(m)), BigInt::from(fix(n)));
    let p = BigRational::from_integer(prime.clone());
    let mut value = unit;
    for _ in 0..exp.unsigned_abs() {
        if exp >= 0 {
            value *= &p;
        } else {
            value /= &p;
        }
    }
    value
}

pub fn arb_element(dim: usize, prime: BigInt) -> impl Strategy<Value = LaurentElement> {
    let term = (
        prop::collection::vec(-6i64..=6, dim),
        -3i64..=4,
        1i64..=9,
        1i64..=9,
        any::<bool>(),
    );
    prop::collection::vec(term, 0..=6).prop_map(move |raw| {
        let terms = raw.into_iter().map(|(coords, exp, m, n, neg)| {
            (
                MultiIndex::from_i64(&coords),
                coefficient(&prime, exp, m, n, neg),
            )
        });
        LaurentElement::from_terms(dim, prime.clone(), terms)
    })
}

/// An element paired with its prime.
pub fn arb_element_any() -> impl Strategy<Value = LaurentElement> {
    (arb_dim(), arb_prime()).prop_flat_map(|(dim, prime)| arb_element(dim, prime))
}

/// Seeded random net; proptest drives the seed and shape.
pub fn seeded_net(seed: u64, dim: usize, profile: NetProfile) -> NetSpec {
    gen::gen_net(&mut Rng::new(seed).substream("prop-net"), dim, profile)
}
